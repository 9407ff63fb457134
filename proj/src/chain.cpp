#include "homalg/chain.hpp"

#include <algorithm>
#include <string>

namespace homalg {

ChainComplex::ChainComplex(Coefficients coeff, std::map<int, long> ranks,
                           std::map<int, Mat> diffs)
    : coeff_(std::move(coeff)) {
    for (auto& [n, r] : ranks) {
        if (r < 0) throw ShapeError("negative rank in degree " + std::to_string(n));
        if (r > 0) ranks_[n] = r;
    }
    for (auto& [n, d] : diffs) {
        long rows = ranks_.count(n - 1) ? ranks_.at(n - 1) : 0;
        long cols = ranks_.count(n) ? ranks_.at(n) : 0;
        if (d.rows() != rows || d.cols() != cols)
            throw ShapeError("differential d_" + std::to_string(n) + " has shape " +
                             std::to_string(d.rows()) + "x" + std::to_string(d.cols()) +
                             ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
        if (rows > 0 && cols > 0) diffs_[n] = reduce(std::move(d), coeff_);
    }
}

long ChainComplex::rank(int n) const {
    auto it = ranks_.find(n);
    return it == ranks_.end() ? 0 : it->second;
}

Mat ChainComplex::diff(int n) const {
    auto it = diffs_.find(n);
    if (it != diffs_.end()) return it->second;
    return Mat::Zero(rank(n - 1), rank(n));
}

bool ChainComplex::operator==(const ChainComplex& o) const {
    if (coeff_ != o.coeff_ || ranks_ != o.ranks_) return false;
    for (int n = lo(); n <= hi() + 1; ++n)
        if (diff(n) != o.diff(n)) return false;
    return true;
}

void validate(const ChainComplex& c) {
    for (int n = c.lo(); n <= c.hi() + 1; ++n) {
        Mat sq = reduce(c.diff(n - 1) * c.diff(n), c.coefficients());
        if (!is_zero(sq))
            throw NotAComplex(n, "d_" + std::to_string(n - 1) + "·d_" + std::to_string(n) +
                                     " != 0");
    }
}

Mat ChainMap::comp(int n) const {
    auto it = comps.find(n);
    if (it != comps.end()) return it->second;
    return Mat::Zero(target.rank(n), source.rank(n));
}

void validate(const ChainMap& f) {
    require_same(f.source.coefficients(), f.target.coefficients());
    for (auto& [n, m] : f.comps)
        if (m.rows() != f.target.rank(n) || m.cols() != f.source.rank(n))
            throw ShapeError("chain map component at degree " + std::to_string(n));
    int lo = std::min(f.source.lo(), f.target.lo());
    int hi = std::max(f.source.hi(), f.target.hi());
    for (int n = lo; n <= hi + 1; ++n) {
        Mat lhs = reduce(f.target.diff(n) * f.comp(n), f.source.coefficients());
        Mat rhs = reduce(f.comp(n - 1) * f.source.diff(n), f.source.coefficients());
        if (lhs != rhs)
            throw NotAChainMap("square at degree " + std::to_string(n) + " does not commute");
    }
}

ChainMap zero_map(const ChainComplex& src, const ChainComplex& tgt) {
    require_same(src.coefficients(), tgt.coefficients());
    return {src, tgt, {}};
}

ChainMap identity_map(const ChainComplex& c) {
    ChainMap f{c, c, {}};
    for (auto& [n, r] : c.ranks()) f.comps[n] = Mat::Identity(r, r);
    return f;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (f.target != g.source) throw CompositionMismatch("compose: target(f) != source(g)");
    ChainMap out{f.source, g.target, {}};
    int lo = std::max(f.source.lo(), g.target.lo());
    int hi = std::min(f.source.hi(), g.target.hi());
    for (int n = lo; n <= hi; ++n) {
        Mat m = reduce(g.comp(n) * f.comp(n), f.source.coefficients());
        if (!is_zero(m)) out.comps[n] = m;
    }
    return out;
}

ChainMap add(const ChainMap& f, const ChainMap& g) {
    ChainMap out{f.source, f.target, {}};
    int lo = std::min(f.source.lo(), f.target.lo());
    int hi = std::max(f.source.hi(), f.target.hi());
    for (int n = lo; n <= hi; ++n) {
        Mat m = reduce(f.comp(n) + g.comp(n), f.source.coefficients());
        if (!is_zero(m)) out.comps[n] = m;
    }
    return out;
}

ChainMap negate(const ChainMap& f) {
    ChainMap out{f.source, f.target, {}};
    for (auto& [n, m] : f.comps) out.comps[n] = reduce(-m, f.source.coefficients());
    return out;
}

ChainMap shift_map(const ChainMap& f, int k) {
    ChainMap out{shift(f.source, k), shift(f.target, k), {}};
    for (auto& [n, m] : f.comps) out.comps[n + k] = m;
    return out;
}

Mat ChainHomotopy::comp(int n) const {
    auto it = comps.find(n);
    if (it != comps.end()) return it->second;
    return Mat::Zero(from.target.rank(n + 1), from.source.rank(n));
}

void validate(const ChainHomotopy& h) {
    const ChainComplex& src = h.from.source;
    const ChainComplex& tgt = h.from.target;
    if (h.to.source != src || h.to.target != tgt)
        throw ShapeError("homotopy endpoints disagree");
    int lo = std::min(src.lo(), tgt.lo()) - 1;
    int hi = std::max(src.hi(), tgt.hi()) + 1;
    for (int n = lo; n <= hi; ++n) {
        Mat lhs = reduce(h.from.comp(n) - h.to.comp(n), src.coefficients());
        Mat rhs = reduce(tgt.diff(n + 1) * h.comp(n) + h.comp(n - 1) * src.diff(n),
                         src.coefficients());
        if (lhs != rhs)
            throw ShapeError("homotopy identity fails at degree " + std::to_string(n));
    }
}

FgModule homology(const ChainComplex& c, int n) { return homology_data(c, n).module; }

HomologyData homology_data(const ChainComplex& c, int n) {
    const Coefficients& k = c.coefficients();
    HomologyData out;
    out.cycles = kernel_basis(c.diff(n), k);
    if (out.cycles.cols() == 0) {
        out.rels = Mat::Zero(0, c.rank(n + 1));
        out.module = FgModule::zero(k);
        out.gens = Mat::Zero(c.rank(n), 0);
        return out;
    }
    auto y = solve(out.cycles, c.diff(n + 1), k);
    if (!y) throw NotAComplex(n + 1, "boundaries escape the cycle lattice");
    out.rels = *y;
    Diagonalization dg = diagonalize(out.rels, k);
    FgModule mod = FgModule::zero(k);
    std::vector<Mat> gen_cols;
    // free generators first, then torsion, matching free_resolution layout
    for (Index i = dg.rank; i < out.cycles.cols(); ++i) {
        ++mod.free_rank;
        gen_cols.push_back(reduce(out.cycles * dg.Uinv.col(i), k));
        out.gen_orders.push_back(0);
    }
    if (!k.is_field())
        for (Index i = 0; i < dg.rank; ++i)
            if (dg.D(i, i) > 1) {
                mod.torsion.push_back(dg.D(i, i));
                gen_cols.push_back(reduce(out.cycles * dg.Uinv.col(i), k));
                out.gen_orders.push_back(dg.D(i, i));
            }
    out.module = mod;
    out.gens = hconcat(gen_cols, c.rank(n));
    return out;
}

ChainComplex shift(const ChainComplex& c, int k) {
    std::map<int, long> ranks;
    std::map<int, Mat> diffs;
    for (auto& [n, r] : c.ranks()) ranks[n + k] = r;
    for (int n = c.lo(); n <= c.hi() + 1; ++n) {
        Mat d = c.diff(n);
        if (d.size() > 0 && !is_zero(d)) diffs[n + k] = (k % 2 == 0) ? d : Mat(-d);
    }
    return ChainComplex(c.coefficients(), ranks, diffs);
}

ConeResult cone(const ChainMap& f) {
    const ChainComplex& x = f.source;
    const ChainComplex& y = f.target;
    const Coefficients& k = x.coefficients();
    require_same(k, y.coefficients());
    std::map<int, long> ranks;
    std::map<int, Mat> diffs;
    int lo = std::min(x.lo() + 1, y.lo());
    int hi = std::max(x.hi() + 1, y.hi());
    for (int n = lo; n <= hi; ++n) {
        long r = x.rank(n - 1) + y.rank(n);
        if (r > 0) ranks[n] = r;
    }
    for (int n = lo; n <= hi; ++n) {
        long rows = x.rank(n - 2) + y.rank(n - 1);
        long cols = x.rank(n - 1) + y.rank(n);
        if (rows == 0 || cols == 0) continue;
        Mat d = Mat::Zero(rows, cols);
        d.block(0, 0, x.rank(n - 2), x.rank(n - 1)) = -x.diff(n - 1);
        d.block(x.rank(n - 2), 0, y.rank(n - 1), x.rank(n - 1)) = -f.comp(n - 1);
        d.block(x.rank(n - 2), x.rank(n - 1), y.rank(n - 1), y.rank(n)) = y.diff(n);
        diffs[n] = d;
    }
    ConeResult out;
    out.complex = ChainComplex(k, ranks, diffs);
    out.incl = ChainMap{y, out.complex, {}};
    for (int n = lo; n <= hi; ++n) {
        if (y.rank(n) == 0) continue;
        Mat m = Mat::Zero(x.rank(n - 1) + y.rank(n), y.rank(n));
        m.block(x.rank(n - 1), 0, y.rank(n), y.rank(n)) = Mat::Identity(y.rank(n), y.rank(n));
        out.incl.comps[n] = m;
    }
    ChainComplex x1 = shift(x, 1);
    out.proj = ChainMap{out.complex, x1, {}};
    for (int n = lo; n <= hi; ++n) {
        if (x.rank(n - 1) == 0) continue;
        Mat m = Mat::Zero(x.rank(n - 1), x.rank(n - 1) + y.rank(n));
        m.block(0, 0, x.rank(n - 1), x.rank(n - 1)) =
            Mat::Identity(x.rank(n - 1), x.rank(n - 1));
        out.proj.comps[n] = m;
    }
    return out;
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
    require_same(a.coefficients(), b.coefficients());
    std::map<int, long> ranks;
    std::map<int, Mat> diffs;
    int lo = std::min(a.lo(), b.lo());
    int hi = std::max(a.hi(), b.hi());
    for (int n = lo; n <= hi; ++n) {
        long r = a.rank(n) + b.rank(n);
        if (r > 0) ranks[n] = r;
    }
    for (int n = lo; n <= hi; ++n) {
        long rows = a.rank(n - 1) + b.rank(n - 1);
        long cols = a.rank(n) + b.rank(n);
        if (rows == 0 || cols == 0) continue;
        Mat d = Mat::Zero(rows, cols);
        d.block(0, 0, a.rank(n - 1), a.rank(n)) = a.diff(n);
        d.block(a.rank(n - 1), a.rank(n), b.rank(n - 1), b.rank(n)) = b.diff(n);
        diffs[n] = d;
    }
    return ChainComplex(a.coefficients(), ranks, diffs);
}

ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g) {
    ChainComplex src = direct_sum(f.source, g.source);
    ChainComplex tgt = direct_sum(f.target, g.target);
    ChainMap out{src, tgt, {}};
    for (int n = src.lo(); n <= src.hi(); ++n) {
        if (src.rank(n) == 0 || tgt.rank(n) == 0) continue;
        Mat m = Mat::Zero(tgt.rank(n), src.rank(n));
        m.block(0, 0, f.target.rank(n), f.source.rank(n)) = f.comp(n);
        m.block(f.target.rank(n), f.source.rank(n), g.target.rank(n), g.source.rank(n)) =
            g.comp(n);
        if (!is_zero(m)) out.comps[n] = m;
    }
    return out;
}

ChainComplex tensor_complex(const ChainComplex& a, const ChainComplex& b) {
    require_same(a.coefficients(), b.coefficients());
    if (a.is_empty() || b.is_empty()) return ChainComplex(a.coefficients(), {}, {});
    auto blocks = [&](int n) {
        std::vector<int> out;
        for (int i = a.lo(); i <= a.hi(); ++i)
            if (a.rank(i) > 0 && b.rank(n - i) > 0) out.push_back(i);
        return out;
    };
    auto block_rank = [&](int n) {
        long r = 0;
        for (int i : blocks(n)) r += a.rank(i) * b.rank(n - i);
        return r;
    };
    auto offset = [&](int n, int i0) {
        long at = 0;
        for (int i : blocks(n)) {
            if (i == i0) return at;
            at += a.rank(i) * b.rank(n - i);
        }
        return at;
    };
    std::map<int, long> ranks;
    std::map<int, Mat> diffs;
    int lo = a.lo() + b.lo(), hi = a.hi() + b.hi();
    for (int n = lo; n <= hi; ++n)
        if (block_rank(n) > 0) ranks[n] = block_rank(n);
    for (int n = lo; n <= hi; ++n) {
        long rows = block_rank(n - 1), cols = block_rank(n);
        if (rows == 0 || cols == 0) continue;
        Mat d = Mat::Zero(rows, cols);
        for (int i : blocks(n)) {
            int j = n - i;
            long col0 = offset(n, i);
            // d_A ⊗ id lands in block (i-1, j)
            if (a.rank(i - 1) > 0 && b.rank(j) > 0) {
                Mat blk = kron(a.diff(i), Mat::Identity(b.rank(j), b.rank(j)));
                d.block(offset(n - 1, i - 1), col0, blk.rows(), blk.cols()) += blk;
            }
            // (−1)^i id ⊗ d_B lands in block (i, j-1)
            if (a.rank(i) > 0 && b.rank(j - 1) > 0) {
                Mat blk = kron(Mat::Identity(a.rank(i), a.rank(i)), b.diff(j));
                if (i % 2 != 0) blk = -blk;
                d.block(offset(n - 1, i), col0, blk.rows(), blk.cols()) += blk;
            }
        }
        if (!is_zero(d)) diffs[n] = reduce(d, a.coefficients());
    }
    return ChainComplex(a.coefficients(), ranks, diffs);
}

std::vector<int> hom_blocks(const ChainComplex& a, const ChainComplex& b, int n) {
    std::vector<int> out;
    for (int m = a.lo(); m <= a.hi(); ++m)
        if (a.rank(m) > 0 && b.rank(m + n) > 0) out.push_back(m);
    return out;
}

static long hom_rank(const ChainComplex& a, const ChainComplex& b, int n) {
    long r = 0;
    for (int m : hom_blocks(a, b, n)) r += a.rank(m) * b.rank(m + n);
    return r;
}

static long hom_offset(const ChainComplex& a, const ChainComplex& b, int n, int m0) {
    long at = 0;
    for (int m : hom_blocks(a, b, n)) {
        if (m == m0) return at;
        at += a.rank(m) * b.rank(m + n);
    }
    return at;
}

Mat hom_diff(const ChainComplex& a, const ChainComplex& b, int n) {
    long rows = hom_rank(a, b, n - 1), cols = hom_rank(a, b, n);
    Mat d = Mat::Zero(rows, cols);
    int sign = (n % 2 == 0) ? 1 : -1;  // −(−1)^n on the precomposition term
    for (int m : hom_blocks(a, b, n - 1)) {
        long row0 = hom_offset(a, b, n - 1, m);
        // d_B ∘ f_m, from block m of degree n
        if (a.rank(m) > 0 && b.rank(m + n) > 0) {
            Mat blk = kron(Mat::Identity(a.rank(m), a.rank(m)), b.diff(m + n));
            d.block(row0, hom_offset(a, b, n, m), blk.rows(), blk.cols()) += blk;
        }
        // −(−1)^n f_{m−1} ∘ d_A^m, from block m−1 of degree n
        if (a.rank(m - 1) > 0 && b.rank(m - 1 + n) > 0) {
            Mat blk = kron(a.diff(m).transpose(),
                           Mat::Identity(b.rank(m + n - 1), b.rank(m + n - 1)));
            d.block(row0, hom_offset(a, b, n, m - 1), blk.rows(), blk.cols()) -= sign * blk;
        }
    }
    return reduce(d, a.coefficients());
}

ChainComplex hom_complex(const ChainComplex& a, const ChainComplex& b) {
    require_same(a.coefficients(), b.coefficients());
    std::map<int, long> ranks;
    std::map<int, Mat> diffs;
    if (a.is_empty() || b.is_empty()) return ChainComplex(a.coefficients(), {}, {});
    int lo = b.lo() - a.hi(), hi = b.hi() - a.lo();
    for (int n = lo; n <= hi; ++n) {
        long r = hom_rank(a, b, n);
        if (r > 0) ranks[n] = r;
    }
    for (int n = lo; n <= hi + 1; ++n) {
        if (hom_rank(a, b, n) == 0 || hom_rank(a, b, n - 1) == 0) continue;
        Mat d = hom_diff(a, b, n);
        if (!is_zero(d)) diffs[n] = d;
    }
    return ChainComplex(a.coefficients(), ranks, diffs);
}

Vec hom_flatten(const ChainComplex& a, const ChainComplex& b, int n,
                const std::map<int, Mat>& comps) {
    Vec v = Vec::Zero(hom_rank(a, b, n));
    for (int m : hom_blocks(a, b, n)) {
        auto it = comps.find(m);
        if (it == comps.end()) continue;
        Vec blk = vec_cm(it->second);
        v.segment(hom_offset(a, b, n, m), blk.size()) = blk;
    }
    return v;
}

std::map<int, Mat> hom_unflatten(const ChainComplex& a, const ChainComplex& b, int n,
                                 const Vec& v) {
    std::map<int, Mat> comps;
    for (int m : hom_blocks(a, b, n)) {
        long rows = b.rank(m + n), cols = a.rank(m);
        Mat blk = unvec_cm(v.segment(hom_offset(a, b, n, m), rows * cols), rows, cols);
        if (!is_zero(blk)) comps[m] = blk;
    }
    return comps;
}

FgModule homotopy_classes(const ChainComplex& a, const ChainComplex& b, int n) {
    return homology(hom_complex(a, b), n);
}

bool is_quasi_iso(const ChainMap& f) {
    ChainComplex c = cone(f).complex;
    for (int n = c.lo(); n <= c.hi(); ++n)
        if (!homology(c, n).is_zero()) return false;
    return true;
}

std::vector<ChainMap> chain_map_basis(const ChainComplex& a, const ChainComplex& b) {
    Mat ker = kernel_basis(hom_diff(a, b, 0), a.coefficients());
    std::vector<ChainMap> out;
    for (Index j = 0; j < ker.cols(); ++j)
        out.push_back(ChainMap{a, b, hom_unflatten(a, b, 0, ker.col(j))});
    return out;
}

std::optional<ChainHomotopy> find_homotopy(const ChainMap& f, const ChainMap& g) {
    const ChainComplex& src = f.source;
    const ChainComplex& tgt = f.target;
    if (g.source != src || g.target != tgt) throw ShapeError("find_homotopy: endpoint mismatch");
    ChainMap diff_map = add(f, negate(g));
    Vec rhs = hom_flatten(src, tgt, 0, diff_map.comps);
    // components outside the hom layout must vanish on their own
    for (auto& [n, m] : diff_map.comps)
        if (src.rank(n) == 0 || tgt.rank(n) == 0)
            if (!is_zero(m)) return std::nullopt;
    Mat d1 = hom_diff(src, tgt, 1);
    auto x = solve(d1, Mat(rhs), src.coefficients());
    if (!x) return std::nullopt;
    ChainHomotopy h{f, g, hom_unflatten(src, tgt, 1, Vec(x->col(0)))};
    return h;
}

bool is_nullhomotopic(const ChainMap& f) {
    return find_homotopy(f, zero_map(f.source, f.target)).has_value();
}

}  // namespace homalg
