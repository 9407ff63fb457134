#include "homalg/generators.hpp"

namespace homalg {

Mat random_matrix(SplitMix64& rng, Index rows, Index cols, long max_abs) {
    Mat m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = rng.range(-max_abs, max_abs);
    return m;
}

ChainComplex random_complex(SplitMix64& rng, const Coefficients& k, int lo_deg, int hi_deg,
                            long max_rank, long max_abs) {
    std::map<int, long> ranks;
    for (int n = lo_deg; n <= hi_deg; ++n) {
        long r = rng.range(0, max_rank);
        if (r > 0) ranks[n] = r;
    }
    std::map<int, Mat> diffs;
    Mat prev_kernel;  // kernel of d_n, in C_{n}'s coordinates
    long prev_rank = 0;
    bool first = true;
    for (int n = lo_deg; n <= hi_deg; ++n) {
        long r = ranks.count(n) ? ranks[n] : 0;
        if (first) {
            prev_kernel = Mat::Identity(r, r);
            prev_rank = r;
            first = false;
            continue;
        }
        if (prev_rank > 0 && r > 0) {
            Mat d = reduce(prev_kernel * random_matrix(rng, prev_kernel.cols(), r, max_abs), k);
            if (!is_zero(d)) diffs[n] = d;
            prev_kernel = kernel_basis(d, k);
        } else {
            prev_kernel = Mat::Identity(r, r);
        }
        prev_rank = r;
    }
    return ChainComplex(k, ranks, diffs);
}

ChainMap random_chain_map(SplitMix64& rng, const ChainComplex& a, const ChainComplex& b,
                          long max_abs) {
    Mat ker = kernel_basis(hom_diff(a, b, 0), a.coefficients());
    Vec v = Vec::Zero(ker.rows());
    for (Index j = 0; j < ker.cols(); ++j) v += Int(rng.range(-max_abs, max_abs)) * ker.col(j);
    return ChainMap{a, b, hom_unflatten(a, b, 0, Vec(reduce(v, a.coefficients())))};
}

FgModule random_module(SplitMix64& rng, const Coefficients& k, long max_rank,
                       long max_factor) {
    long free_rank = rng.range(0, max_rank);
    std::vector<Int> torsion;
    long pieces = rng.range(0, 2);
    for (long i = 0; i < pieces; ++i) torsion.push_back(rng.range(2, max_factor));
    return module_from_cyclics(k, free_rank, torsion);
}

FilteredComplex random_filtration(SplitMix64& rng, const Coefficients& k, int steps,
                                  int lo_deg, int hi_deg, long max_rank) {
    FilteredComplex f;
    f.steps.push_back(random_complex(rng, k, lo_deg, hi_deg, max_rank));
    for (int p = 1; p < steps; ++p) {
        auto w = random_complex(rng, k, lo_deg, hi_deg, max_rank);
        auto c = cone(random_chain_map(rng, w, f.steps.back()));
        f.incls.push_back(c.incl);
        f.steps.push_back(c.complex);
    }
    return f;
}

FilteredComplex column_filtration(const ChainComplex& a, const ChainComplex& b) {
    const Coefficients& k = a.coefficients();
    require_same(k, b.coefficients());
    ChainComplex tot = tensor_complex(a, b);
    auto step_rank = [&](int p, int n) {
        long r = 0;
        for (int i = a.lo(); i <= p && i <= a.hi(); ++i) r += a.rank(i) * b.rank(n - i);
        return r;
    };
    FilteredComplex f;
    for (int p = a.lo(); p <= a.hi(); ++p) {
        std::map<int, long> ranks;
        std::map<int, Mat> diffs;
        for (int n = tot.lo(); n <= tot.hi(); ++n) {
            long r = step_rank(p, n);
            if (r > 0) ranks[n] = r;
        }
        for (int n = tot.lo() + 1; n <= tot.hi(); ++n) {
            long rows = step_rank(p, n - 1), cols = step_rank(p, n);
            if (rows == 0 || cols == 0) continue;
            // the tensor basis is ordered by left degree first, so the step is
            // an initial coordinate block closed under the differential
            Mat d = tot.diff(n).topLeftCorner(rows, cols);
            if (!is_zero(d)) diffs[n] = d;
        }
        ChainComplex step(k, ranks, diffs);
        if (!f.steps.empty()) {
            std::map<int, Mat> comps;
            const ChainComplex& prev = f.steps.back();
            for (int n = prev.lo(); n <= prev.hi(); ++n) {
                Mat inc = Mat::Zero(step.rank(n), prev.rank(n));
                inc.topLeftCorner(prev.rank(n), prev.rank(n)) =
                    Mat::Identity(prev.rank(n), prev.rank(n));
                comps[n] = inc;
            }
            f.incls.push_back(ChainMap{prev, step, comps});
        }
        f.steps.push_back(step);
    }
    if (f.steps.empty()) f.steps.push_back(tot);
    return f;
}

}  // namespace homalg
