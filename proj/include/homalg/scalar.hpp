#ifndef HOMALG_SCALAR_HPP
#define HOMALG_SCALAR_HPP

#include <Eigen/Core>
#include <gmpxx.h>

#include <initializer_list>
#include <vector>

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
    typedef mpz_class Real;
    typedef mpz_class NonInteger;
    typedef mpz_class Nested;
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 1,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
};

}  // namespace Eigen

namespace homalg {

using Int = mpz_class;
using Mat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

inline bool is_zero(const Mat& a) {
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) return false;
    return true;
}

// Row-major literal, e.g. mat(2, 2, {1, 2, 3, 4}).
inline Mat mat(Index rows, Index cols, std::initializer_list<long> entries) {
    Mat m = Mat::Zero(rows, cols);
    Index k = 0;
    for (long e : entries) {
        m(k / cols, k % cols) = e;
        ++k;
    }
    return m;
}

inline Mat hconcat(const std::vector<Mat>& blocks, Index rows) {
    Index cols = 0;
    for (const Mat& b : blocks) cols += b.cols();
    Mat out = Mat::Zero(rows, cols);
    Index at = 0;
    for (const Mat& b : blocks) {
        out.block(0, at, b.rows(), b.cols()) = b;
        at += b.cols();
    }
    return out;
}

inline Mat vconcat(const std::vector<Mat>& blocks, Index cols) {
    Index rows = 0;
    for (const Mat& b : blocks) rows += b.rows();
    Mat out = Mat::Zero(rows, cols);
    Index at = 0;
    for (const Mat& b : blocks) {
        out.block(at, 0, b.rows(), b.cols()) = b;
        at += b.rows();
    }
    return out;
}

// Kronecker product: (A ⊗ B)(i1*rB+i2, j1*cB+j2) = A(i1,j1)·B(i2,j2).
inline Mat kron(const Mat& a, const Mat& b) {
    Mat out = Mat::Zero(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0)
                out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Column-major vectorization; pairs with kron for vec(P·F·Q) = (Qᵀ ⊗ P)·vec(F).
inline Vec vec_cm(const Mat& f) {
    Vec v(f.rows() * f.cols());
    for (Index j = 0; j < f.cols(); ++j)
        for (Index i = 0; i < f.rows(); ++i) v(j * f.rows() + i) = f(i, j);
    return v;
}

inline Mat unvec_cm(const Vec& v, Index rows, Index cols) {
    Mat f(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) f(i, j) = v(j * rows + i);
    return f;
}

}  // namespace homalg

#endif
