#ifndef HOMALG_LINALG_HPP
#define HOMALG_LINALG_HPP

#include <optional>
#include <string>
#include <vector>

#include "homalg/errors.hpp"
#include "homalg/scalar.hpp"

namespace homalg {

struct Coefficients {
    enum class Kind { Integers, PrimeField };
    Kind kind = Kind::Integers;
    Int p = 0;  // modulus, PrimeField only

    static Coefficients integers() { return {Kind::Integers, 0}; }
    static Coefficients prime_field(const Int& p);

    bool is_field() const { return kind == Kind::PrimeField; }
    bool operator==(const Coefficients& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const Coefficients& o) const { return !(*this == o); }
    std::string to_string() const;
};

void require_same(const Coefficients& a, const Coefficients& b);

// Reduce all entries into [0, p) for PrimeField; no-op over the integers.
Mat reduce(Mat a, const Coefficients& k);

// Finitely generated module in invariant-factor form.  Over a prime field the
// torsion list is always empty.
struct FgModule {
    Coefficients coeff;
    long free_rank = 0;
    std::vector<Int> torsion;  // d_1 | d_2 | ..., each > 1

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool is_finite() const { return coeff.is_field() ? true : free_rank == 0; }
    Int order() const;  // product of invariant factors (fields: p^rank); 0 if infinite
    bool operator==(const FgModule& o) const {
        return coeff == o.coeff && free_rank == o.free_rank && torsion == o.torsion;
    }
    bool operator!=(const FgModule& o) const { return !(*this == o); }
    std::string to_string() const;

    static FgModule zero(const Coefficients& k) { return {k, 0, {}}; }
    static FgModule free(const Coefficients& k, long rank) { return {k, rank, {}}; }
    // Z/d or F_p^0/F_p... over a field any cyclic torsion collapses per the field rules.
    static FgModule cyclic(const Coefficients& k, const Int& d);
};

// D = U·A·V with U, V invertible (unimodular over Z).  Over the integers D is
// the Smith normal form; over a prime field D has 1s on the first `rank`
// diagonal slots.  Uinv, Vinv are the tracked inverses.
struct Diagonalization {
    Mat U, Uinv, D, V, Vinv;
    Index rank = 0;
};

Diagonalization diagonalize(const Mat& a, const Coefficients& k);

// Public SNF entry point; integer matrices only.
struct SmithNormalForm {
    Mat U, D, V;
};
SmithNormalForm smith_normal_form(const Mat& a, const Coefficients& k);

Index rank(const Mat& a, const Coefficients& k);

// Basis of ker(a) as columns; over Z the basis spans the full kernel lattice
// (saturated).  Canonicalized to column Hermite form so equal kernels get
// equal bases.
Mat kernel_basis(const Mat& a, const Coefficients& k);

// Basis of the column-span lattice of a, in column Hermite form.
Mat image_basis(const Mat& a, const Coefficients& k);

// Exact solve a·X = b; nullopt when no exact solution exists.
std::optional<Mat> solve(const Mat& a, const Mat& b, const Coefficients& k);

// Canonical column echelon basis of the lattice spanned by the columns:
// pivot rows strictly increasing, pivots positive, earlier columns reduced
// modulo the pivot.  Zero columns are dropped.
Mat hnf_columns(const Mat& a, const Coefficients& k);

// {x : f·x ∈ span(l)}, basis as columns.  f: m×n, l: m×k, result n×s.
Mat preimage_lattice(const Mat& f, const Mat& l, const Coefficients& k);

// span(a) ∩ span(b), basis as columns.
Mat lattice_intersect(const Mat& a, const Mat& b, const Coefficients& k);

inline Mat lattice_sum(const Mat& a, const Mat& b) {
    return hconcat({a, b}, a.rows());
}

inline bool lattice_contains(const Mat& l, const Mat& x, const Coefficients& k) {
    return solve(l, x, k).has_value();
}

// ambient^n / span(rel) in invariant-factor form.
FgModule cokernel_module(const Mat& rel, Index ambient, const Coefficients& k);

// span(generators)/span(relations); MembershipError when a relation column is
// outside the integral span of the generators.
FgModule subquotient(const Mat& generators, const Mat& relations, const Coefficients& k);

// Hom(M,N) and M⊗N via the cyclic-factor formulas.
struct HomTensor {
    FgModule hom, tensor;
};
HomTensor hom_and_tensor(const FgModule& m, const FgModule& n);

// Invariant-factor normalization of a direct sum of cyclic pieces.
FgModule module_from_cyclics(const Coefficients& k, long free_rank, std::vector<Int> torsion);

// Exact determinant (Bareiss); used by tests as an independent unimodularity check.
Int det_bareiss(Mat a);

Int gcd(const Int& a, const Int& b);

}  // namespace homalg

#endif
