#include "homalg/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace homalg {

Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

static Int fdiv(const Int& x, const Int& d) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    return q;
}

static Int mod_p(const Int& x, const Int& p) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    return r;
}

static Int inv_mod(const Int& x, const Int& p) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()) == 0)
        throw Error("Internal", "non-invertible residue");
    return r;
}

Coefficients Coefficients::prime_field(const Int& p) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        throw Error("NotPrime", "modulus " + p.get_str() + " is not prime");
    return {Kind::PrimeField, p};
}

std::string Coefficients::to_string() const {
    return is_field() ? "F" + p.get_str() : "Z";
}

void require_same(const Coefficients& a, const Coefficients& b) {
    if (a != b)
        throw CoefficientMismatch(a.to_string() + " vs " + b.to_string());
}

Mat reduce(Mat a, const Coefficients& k) {
    if (k.is_field())
        for (Index i = 0; i < a.rows(); ++i)
            for (Index j = 0; j < a.cols(); ++j) a(i, j) = mod_p(a(i, j), k.p);
    return a;
}

Int FgModule::order() const {
    if (coeff.is_field()) {
        Int o = 1;
        for (long i = 0; i < free_rank; ++i) o *= coeff.p;
        return o;
    }
    if (free_rank > 0) return 0;
    Int o = 1;
    for (const Int& d : torsion) o *= d;
    return o;
}

std::string FgModule::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    std::string base = coeff.is_field() ? "F" + coeff.p.get_str() : "Z";
    bool first = true;
    if (free_rank > 0) {
        os << base;
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const Int& d : torsion) {
        if (!first) os << " + ";
        os << "Z/" << d.get_str();
        first = false;
    }
    return os.str();
}

FgModule FgModule::cyclic(const Coefficients& k, const Int& d) {
    Int a = abs(d);
    if (a == 0) return free(k, 1);
    if (k.is_field() || a == 1) return zero(k);  // units act invertibly over a field
    return {k, 0, {a}};
}

// --- elementary-operation bookkeeping ------------------------------------

namespace {

struct Ops {
    Mat& D;
    Mat& U;
    Mat& Uinv;
    Mat& V;
    Mat& Vinv;
    const Coefficients& k;

    void post() {
        if (k.is_field()) {
            D = reduce(D, k);
            U = reduce(U, k);
            Uinv = reduce(Uinv, k);
            V = reduce(V, k);
            Vinv = reduce(Vinv, k);
        }
    }
    void row_swap(Index i, Index j) {
        D.row(i).swap(D.row(j));
        U.row(i).swap(U.row(j));
        Uinv.col(i).swap(Uinv.col(j));
    }
    void col_swap(Index i, Index j) {
        D.col(i).swap(D.col(j));
        V.col(i).swap(V.col(j));
        Vinv.row(i).swap(Vinv.row(j));
    }
    void row_neg(Index i) {
        D.row(i) = -D.row(i);
        U.row(i) = -U.row(i);
        Uinv.col(i) = -Uinv.col(i);
        post();
    }
    // row_i -= q * row_j
    void row_axpy(Index i, Index j, Int q) {
        D.row(i) -= q * D.row(j);
        U.row(i) -= q * U.row(j);
        Uinv.col(j) += q * Uinv.col(i);
        post();
    }
    // col_j -= q * col_i
    void col_axpy(Index j, Index i, Int q) {
        D.col(j) -= q * D.col(i);
        V.col(j) -= q * V.col(i);
        Vinv.row(i) += q * Vinv.row(j);
        post();
    }
    // fields only: row_i *= s
    void row_scale(Index i, Int s) {
        D.row(i) *= s;
        U.row(i) *= s;
        Uinv.col(i) *= inv_mod(s, k.p);
        post();
    }
};

}  // namespace

Diagonalization diagonalize(const Mat& a, const Coefficients& k) {
    const Index m = a.rows(), n = a.cols();
    Diagonalization dg;
    dg.U = Mat::Identity(m, m);
    dg.Uinv = Mat::Identity(m, m);
    dg.V = Mat::Identity(n, n);
    dg.Vinv = Mat::Identity(n, n);
    dg.D = reduce(a, k);
    Ops ops{dg.D, dg.U, dg.Uinv, dg.V, dg.Vinv, k};
    Mat& D = dg.D;

    Index t = 0;
    if (k.is_field()) {
        for (; t < std::min(m, n); ++t) {
            Index pi = -1, pj = -1;
            for (Index i = t; i < m && pi < 0; ++i)
                for (Index j = t; j < n; ++j)
                    if (D(i, j) != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi < 0) break;
            if (pi != t) ops.row_swap(t, pi);
            if (pj != t) ops.col_swap(t, pj);
            ops.row_scale(t, inv_mod(D(t, t), k.p));
            for (Index i = t + 1; i < m; ++i)
                if (D(i, t) != 0) ops.row_axpy(i, t, D(i, t));
            for (Index j = t + 1; j < n; ++j)
                if (D(t, j) != 0) ops.col_axpy(j, t, D(t, j));
        }
        dg.rank = t;
        return dg;
    }

    // Smith normal form: smallest-nonzero-absolute-value pivot with full
    // row/column reduction, then the divisibility fixup.
    while (t < std::min(m, n)) {
        Index pi = -1, pj = -1;
        Int best = 0;
        for (Index i = t; i < m; ++i)
            for (Index j = t; j < n; ++j) {
                if (D(i, j) == 0) continue;
                Int v = abs(D(i, j));
                if (pi < 0 || v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        if (pi != t) ops.row_swap(t, pi);
        if (pj != t) ops.col_swap(t, pj);

        bool dirty = false;
        for (Index i = t + 1; i < m; ++i)
            if (D(i, t) != 0) {
                ops.row_axpy(i, t, Int(D(i, t) / D(t, t)));
                if (D(i, t) != 0) dirty = true;
            }
        for (Index j = t + 1; j < n; ++j)
            if (D(t, j) != 0) {
                ops.col_axpy(j, t, Int(D(t, j) / D(t, t)));
                if (D(t, j) != 0) dirty = true;
            }
        if (dirty) continue;

        Index bi = -1, bj = -1;
        for (Index i = t + 1; i < m && bi < 0; ++i)
            for (Index j = t + 1; j < n; ++j)
                if (D(i, j) % D(t, t) != 0) {
                    bi = i;
                    bj = j;
                    break;
                }
        if (bi >= 0) {
            ops.row_axpy(t, bi, Int(-1));  // drag the offending row up, re-reduce
            continue;
        }
        if (D(t, t) < 0) ops.row_neg(t);
        ++t;
    }
    dg.rank = t;
    return dg;
}

SmithNormalForm smith_normal_form(const Mat& a, const Coefficients& k) {
    if (k.is_field())
        throw Error("NotIntegers", "smith_normal_form is defined over Z; use rank/diagonalize over a field");
    Diagonalization dg = diagonalize(a, k);
    return {dg.U, dg.D, dg.V};
}

Index rank(const Mat& a, const Coefficients& k) { return diagonalize(a, k).rank; }

Mat hnf_columns(const Mat& a, const Coefficients& k) {
    Mat h = reduce(a, k);
    const Index m = h.rows(), n = h.cols();
    Index t = 0;
    for (Index r = 0; r < m && t < n; ++r) {
        if (k.is_field()) {
            Index pj = -1;
            for (Index j = t; j < n; ++j)
                if (h(r, j) != 0) {
                    pj = j;
                    break;
                }
            if (pj < 0) continue;
            if (pj != t) h.col(t).swap(h.col(pj));
            Int inv = inv_mod(h(r, t), k.p);
            h.col(t) *= inv;
            for (Index j = 0; j < n; ++j)
                if (j != t && h(r, j) != 0) h.col(j) -= h(r, j) * h.col(t);
            h = reduce(h, k);
            ++t;
            continue;
        }
        for (;;) {
            Index pj = -1;
            Int best = 0;
            for (Index j = t; j < n; ++j) {
                if (h(r, j) == 0) continue;
                Int v = abs(h(r, j));
                if (pj < 0 || v < best) {
                    best = v;
                    pj = j;
                }
            }
            if (pj < 0) goto next_row;
            if (pj != t) h.col(t).swap(h.col(pj));
            {
                bool done = true;
                for (Index j = t + 1; j < n; ++j)
                    if (h(r, j) != 0) {
                        h.col(j) -= Int(h(r, j) / h(r, t)) * h.col(t);
                        if (h(r, j) != 0) done = false;
                    }
                if (done) break;
            }
        }
        if (h(r, t) < 0) h.col(t) = -h.col(t);
        for (Index j = 0; j < t; ++j)
            if (h(r, j) != 0) h.col(j) -= fdiv(h(r, j), h(r, t)) * h.col(t);
        ++t;
    next_row:;
    }
    return h.leftCols(t);
}

Mat image_basis(const Mat& a, const Coefficients& k) { return hnf_columns(a, k); }

Mat kernel_basis(const Mat& a, const Coefficients& k) {
    Diagonalization dg = diagonalize(a, k);
    Mat ker = dg.V.rightCols(dg.V.cols() - dg.rank);
    return hnf_columns(ker, k);
}

std::optional<Mat> solve(const Mat& a, const Mat& b, const Coefficients& k) {
    if (a.rows() != b.rows()) throw ShapeError("solve: row mismatch");
    Diagonalization dg = diagonalize(a, k);
    Mat y = reduce(dg.U * b, k);
    Mat x0 = Mat::Zero(a.cols(), b.cols());
    for (Index c = 0; c < b.cols(); ++c) {
        for (Index i = 0; i < dg.rank; ++i) {
            if (k.is_field()) {
                x0(i, c) = y(i, c);  // unit pivots
            } else {
                if (y(i, c) % dg.D(i, i) != 0) return std::nullopt;
                x0(i, c) = y(i, c) / dg.D(i, i);
            }
        }
        for (Index i = dg.rank; i < y.rows(); ++i)
            if (y(i, c) != 0) return std::nullopt;
    }
    return reduce(dg.V * x0, k);
}

Mat preimage_lattice(const Mat& f, const Mat& l, const Coefficients& k) {
    if (f.rows() != l.rows()) throw ShapeError("preimage_lattice: row mismatch");
    Mat stacked = hconcat({f, Mat(-l)}, f.rows());
    Mat ker = kernel_basis(stacked, k);
    return image_basis(ker.topRows(f.cols()), k);
}

Mat lattice_intersect(const Mat& a, const Mat& b, const Coefficients& k) {
    if (a.rows() != b.rows()) throw ShapeError("lattice_intersect: row mismatch");
    Mat stacked = hconcat({a, Mat(-b)}, a.rows());
    Mat ker = kernel_basis(stacked, k);
    return image_basis(reduce(a * ker.topRows(a.cols()), k), k);
}

FgModule cokernel_module(const Mat& rel, Index ambient, const Coefficients& k) {
    if (rel.rows() != ambient) throw ShapeError("cokernel_module: ambient mismatch");
    Diagonalization dg = diagonalize(rel, k);
    FgModule out = FgModule::zero(k);
    out.free_rank = static_cast<long>(ambient - dg.rank);
    if (!k.is_field())
        for (Index i = 0; i < dg.rank; ++i)
            if (dg.D(i, i) > 1) out.torsion.push_back(dg.D(i, i));
    return out;
}

FgModule subquotient(const Mat& generators, const Mat& relations, const Coefficients& k) {
    if (generators.rows() != relations.rows())
        throw ShapeError("subquotient: ambient mismatch");
    Mat basis = image_basis(generators, k);
    auto coords = solve(basis, relations, k);
    if (!coords)
        throw MembershipError("relation column outside the span of the generators");
    return cokernel_module(*coords, basis.cols(), k);
}

FgModule module_from_cyclics(const Coefficients& k, long free_rank, std::vector<Int> torsion) {
    std::vector<Int> kept;
    for (Int& d : torsion) {
        Int a = abs(d);
        if (a == 0) {
            ++free_rank;
        } else if (a > 1 && !k.is_field()) {
            kept.push_back(a);
        }
    }
    Mat diag = Mat::Zero(static_cast<Index>(kept.size()), static_cast<Index>(kept.size()));
    for (size_t i = 0; i < kept.size(); ++i)
        diag(static_cast<Index>(i), static_cast<Index>(i)) = kept[i];
    FgModule out = cokernel_module(diag, diag.rows(), k);
    out.free_rank = free_rank;
    return out;
}

HomTensor hom_and_tensor(const FgModule& m, const FgModule& n) {
    require_same(m.coeff, n.coeff);
    const Coefficients& k = m.coeff;
    if (k.is_field()) {
        long r = m.free_rank * n.free_rank;
        return {FgModule::free(k, r), FgModule::free(k, r)};
    }
    long hom_free = m.free_rank * n.free_rank;
    long ten_free = hom_free;
    std::vector<Int> hom_t, ten_t;
    for (const Int& e : n.torsion)
        for (long i = 0; i < m.free_rank; ++i) {
            hom_t.push_back(e);  // Hom(Z, Z/e)
            ten_t.push_back(e);  // Z ⊗ Z/e
        }
    for (const Int& d : m.torsion) {
        for (long j = 0; j < n.free_rank; ++j) ten_t.push_back(d);  // Z/d ⊗ Z; Hom(Z/d, Z) = 0
        for (const Int& e : n.torsion) {
            Int g = gcd(d, e);
            hom_t.push_back(g);
            ten_t.push_back(g);
        }
    }
    return {module_from_cyclics(k, hom_free, hom_t), module_from_cyclics(k, ten_free, ten_t)};
}

Int det_bareiss(Mat a) {
    if (a.rows() != a.cols()) throw ShapeError("det: square required");
    const Index n = a.rows();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (Index t = 0; t < n - 1; ++t) {
        if (a(t, t) == 0) {
            Index pi = -1;
            for (Index i = t + 1; i < n; ++i)
                if (a(i, t) != 0) {
                    pi = i;
                    break;
                }
            if (pi < 0) return 0;
            a.row(t).swap(a.row(pi));
            sign = -sign;
        }
        for (Index i = t + 1; i < n; ++i)
            for (Index j = t + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(t, t) - a(i, t) * a(t, j)) / prev;
        prev = a(t, t);
    }
    return sign * a(n - 1, n - 1);
}

}  // namespace homalg
