// oracles.hpp — reference constructions used by the tests, built from defining formulas

#pragma once

#include <functional>

#include "qmaps/linalg.hpp"

namespace oracle {

using qmaps::ComplexMatrix;

// Column-stacking transfer matrix of X -> f(X), tabulated on matrix units.
inline ComplexMatrix tabulate(int d, const std::function<ComplexMatrix(const ComplexMatrix&)>& f) {
    ComplexMatrix t(d * d, d * d);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            ComplexMatrix e = ComplexMatrix::Zero(d, d);
            e(i, j) = 1.0;
            const ComplexMatrix y = f(e);
            for (int c = 0; c < d; ++c) {
                for (int r = 0; r < d; ++r) {
                    t(r + c * d, i + j * d) = y(r, c);
                }
            }
        }
    }
    return t;
}

inline ComplexMatrix diag_part(const ComplexMatrix& x) {
    ComplexMatrix y = ComplexMatrix::Zero(x.rows(), x.cols());
    y.diagonal() = x.diagonal();
    return y;
}

inline ComplexMatrix eye(int d) { return ComplexMatrix::Identity(d, d); }

inline ComplexMatrix e3(int d) {
    return tabulate(d, [d](const ComplexMatrix& x) { return ((eye(d) * x.trace() - diag_part(x)) / (d - 1.0)).eval(); });
}

inline ComplexMatrix e4(int d) {
    return tabulate(d, [d](const ComplexMatrix& x) {
        return ((x + eye(d) * x.trace() - diag_part(x)) / static_cast<double>(d)).eval();
    });
}

inline ComplexMatrix depolarizing(int d) {
    return tabulate(d, [d](const ComplexMatrix& x) { return (eye(d) * x.trace() / static_cast<double>(d)).eval(); });
}

// (1 - a - b) X + a I Tr X / d + b Delta(X)
inline ComplexMatrix family(int d, double a, double b) {
    return tabulate(d, [=](const ComplexMatrix& x) {
        return ((1.0 - a - b) * x + a * eye(d) * x.trace() / static_cast<double>(d) + b * diag_part(x)).eval();
    });
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace oracle
