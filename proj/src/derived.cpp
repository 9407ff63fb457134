#include "homalg/derived.hpp"

namespace homalg {

Resolution free_resolution(const FgModule& m) {
    long t = static_cast<long>(m.torsion.size());
    long r0 = m.free_rank + t;
    std::map<int, long> ranks;
    std::map<int, Mat> diffs;
    if (r0 > 0) ranks[0] = r0;
    if (t > 0) {
        ranks[1] = t;
        Mat d = Mat::Zero(r0, t);
        for (long i = 0; i < t; ++i) d(m.free_rank + i, i) = m.torsion[i];
        diffs[1] = d;
    }
    return {m, ChainComplex(m.coeff, ranks, diffs), Mat::Identity(r0, r0)};
}

ResolvedComplex resolve_complex(const ChainComplex& c) {
    const Coefficients& k = c.coefficients();
    std::map<int, long> ranks;
    std::map<int, Mat> diffs;
    std::map<int, Mat> comps;
    std::map<int, HomologyData> hds;
    std::map<int, Mat> lifts;  // degree n+1 block for the torsion of H_n
    for (int n = c.lo(); n <= c.hi(); ++n) {
        HomologyData hd = homology_data(c, n);
        long t = static_cast<long>(hd.module.torsion.size());
        Mat lift(c.rank(n + 1), t);
        long free = hd.module.free_rank;
        for (long i = 0; i < t; ++i) {
            Mat target = reduce(hd.module.torsion[i] * hd.gens.col(free + i), k);
            auto x = solve(c.diff(n + 1), target, k);
            if (!x) throw Error("Internal", "torsion boundary failed to lift");
            lift.col(i) = x->col(0);
        }
        hds[n] = std::move(hd);
        lifts[n] = std::move(lift);
    }
    auto gens_count = [&](int n) -> long {
        auto it = hds.find(n);
        if (it == hds.end()) return 0;
        return it->second.module.free_rank + static_cast<long>(it->second.module.torsion.size());
    };
    auto tors_count = [&](int n) -> long {
        auto it = hds.find(n);
        return it == hds.end() ? 0 : static_cast<long>(it->second.module.torsion.size());
    };
    for (int n = c.lo(); n <= c.hi() + 1; ++n) {
        long r = gens_count(n) + tors_count(n - 1);
        if (r > 0) ranks[n] = r;
        long rows = gens_count(n - 1) + tors_count(n - 2);
        if (rows > 0 && r > 0) {
            Mat d = Mat::Zero(rows, r);
            long free = hds.count(n - 1) ? hds[n - 1].module.free_rank : 0;
            for (long i = 0; i < tors_count(n - 1); ++i)
                d(free + i, gens_count(n) + i) = hds[n - 1].module.torsion[i];
            if (!is_zero(d)) diffs[n] = d;
        }
        if (c.rank(n) > 0 && r > 0) {
            Mat f = Mat::Zero(c.rank(n), r);
            if (gens_count(n) > 0)
                f.block(0, 0, c.rank(n), gens_count(n)) = hds[n].gens;
            if (tors_count(n - 1) > 0)
                f.block(0, gens_count(n), c.rank(n), tors_count(n - 1)) = lifts[n - 1];
            if (!is_zero(f)) comps[n] = f;
        }
    }
    ResolvedComplex out;
    out.complex = ChainComplex(k, ranks, diffs);
    out.to_original = ChainMap{out.complex, c, comps};
    return out;
}

FgModule ext(const FgModule& m, const FgModule& n, int deg) {
    require_same(m.coeff, n.coeff);
    if (deg < 0) return FgModule::zero(m.coeff);  // π_{−deg} vanishes for concentrated objects
    ChainComplex p = free_resolution(m).complex;
    ChainComplex q = free_resolution(n).complex;
    return homology(hom_complex(p, q), -deg);
}

FgModule tor(const FgModule& m, const FgModule& n, int deg) {
    require_same(m.coeff, n.coeff);
    if (deg < 0) return FgModule::zero(m.coeff);
    ChainComplex p = free_resolution(m).complex;
    ChainComplex q = free_resolution(n).complex;
    return homology(tensor_complex(p, q), deg);
}

TruncationGeq truncate_geq(const ChainComplex& c, int n) {
    const Coefficients& k = c.coefficients();
    if (n <= c.lo()) return {c, identity_map(c)};
    Mat ker = kernel_basis(c.diff(n), k);
    std::map<int, long> ranks;
    std::map<int, Mat> diffs;
    std::map<int, Mat> comps;
    if (ker.cols() > 0) {
        ranks[n] = ker.cols();
        comps[n] = ker;
        if (c.rank(n + 1) > 0) {
            auto d = solve(ker, c.diff(n + 1), k);
            if (!d) throw Error("Internal", "boundaries escape the cycle lattice");
            if (!is_zero(*d)) diffs[n + 1] = *d;
        }
    }
    for (int m = n + 1; m <= c.hi(); ++m) {
        if (c.rank(m) > 0) {
            ranks[m] = c.rank(m);
            comps[m] = Mat::Identity(c.rank(m), c.rank(m));
        }
        if (m >= n + 2 && c.rank(m) > 0 && c.rank(m - 1) > 0) {
            Mat d = c.diff(m);
            if (!is_zero(d)) diffs[m] = d;
        }
    }
    TruncationGeq out;
    out.complex = ChainComplex(k, ranks, diffs);
    out.incl = ChainMap{out.complex, c, comps};
    return out;
}

TruncationLeq truncate_leq(const ChainComplex& c, int n) {
    const Coefficients& k = c.coefficients();
    std::map<int, long> ranks;
    std::map<int, Mat> diffs;
    std::map<int, Mat> comps;
    for (int m = c.lo(); m <= n && m <= c.hi(); ++m) {
        if (c.rank(m) > 0) {
            ranks[m] = c.rank(m);
            comps[m] = Mat::Identity(c.rank(m), c.rank(m));
        }
        if (m >= c.lo() + 1 && c.rank(m) > 0 && c.rank(m - 1) > 0) {
            Mat d = c.diff(m);
            if (!is_zero(d)) diffs[m] = d;
        }
    }
    // free cover of the boundaries one degree above the cut
    Mat b = image_basis(c.diff(n + 1), k);
    if (b.cols() > 0) {
        ranks[n + 1] = b.cols();
        diffs[n + 1] = b;
        auto q = solve(b, c.diff(n + 1), k);
        if (!q) throw Error("Internal", "image basis does not span the boundaries");
        if (!is_zero(*q)) comps[n + 1] = *q;
    }
    TruncationLeq out;
    out.complex = ChainComplex(k, ranks, diffs);
    out.proj = ChainMap{c, out.complex, comps};
    return out;
}

FgModule heart_pi(const ChainComplex& c, int n) { return homology(c, n); }

}  // namespace homalg
