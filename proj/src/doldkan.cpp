#include "homalg/doldkan.hpp"

#include <algorithm>

namespace homalg {

long SimplicialModule::level(int n) const {
    auto it = levels.find(n);
    return it == levels.end() ? 0 : it->second;
}

Mat SimplicialModule::face(int n, int i) const {
    auto it = faces.find({n, i});
    if (it != faces.end()) return it->second;
    return Mat::Zero(level(n - 1), level(n));
}

Mat SimplicialModule::degeneracy(int n, int i) const {
    auto it = degeneracies.find({n, i});
    if (it != degeneracies.end()) return it->second;
    return Mat::Zero(level(n + 1), level(n));
}

void validate(const SimplicialModule& m) {
    for (auto& [n, r] : m.levels)
        if (n < 0 || n > m.bound || r <= 0)
            throw ShapeError("simplicial module: bad level " + std::to_string(n));
    auto shape = [&](const Mat& a, long rows, long cols, const std::string& what) {
        if (a.rows() != rows || a.cols() != cols)
            throw ShapeError("simplicial module: " + what + " has wrong shape");
    };
    for (auto& [key, a] : m.faces) {
        auto [n, i] = key;
        if (n < 1 || i < 0 || i > n) throw ShapeError("simplicial module: face index");
        shape(a, m.level(n - 1), m.level(n), "face");
    }
    for (auto& [key, a] : m.degeneracies) {
        auto [n, i] = key;
        if (n < 0 || i < 0 || i > n) throw ShapeError("simplicial module: degeneracy index");
        shape(a, m.level(n + 1), m.level(n), "degeneracy");
    }
    const Coefficients& k = m.coeff;
    auto eq = [&](const Mat& a, const Mat& b, int n, const std::string& law) {
        if (reduce(a, k) != reduce(b, k))
            throw SimplicialIdentityViolation(law + " fails at level " + std::to_string(n));
    };
    for (int n = 0; n <= m.bound; ++n) {
        for (int i = 0; i < n - 1; ++i)
            for (int j = i + 1; j <= n; ++j)
                eq(m.face(n - 1, i) * m.face(n, j), m.face(n - 1, j - 1) * m.face(n, i), n,
                   "d_i d_j = d_{j-1} d_i");
        if (n + 2 <= m.bound)
            for (int i = 0; i <= n; ++i)
                for (int j = i; j <= n; ++j)
                    eq(m.degeneracy(n + 1, i) * m.degeneracy(n, j),
                       m.degeneracy(n + 1, j + 1) * m.degeneracy(n, i), n,
                       "s_i s_j = s_{j+1} s_i");
        if (n + 1 > m.bound) continue;
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                Mat lhs = m.face(n + 1, i) * m.degeneracy(n, j);
                if (i == j || i == j + 1)
                    eq(lhs, Mat::Identity(m.level(n), m.level(n)), n, "d_j s_j = id");
                else if (i < j)
                    eq(lhs, m.degeneracy(n - 1, j - 1) * m.face(n, i), n,
                       "d_i s_j = s_{j-1} d_i");
                else
                    eq(lhs, m.degeneracy(n - 1, j) * m.face(n, i - 1), n,
                       "d_i s_j = s_j d_{i-1}");
            }
    }
}

ChainComplex normalized_chains(const SimplicialModule& m) {
    validate(m);
    const Coefficients& k = m.coeff;
    std::map<int, long> ranks;
    std::map<int, Mat> diffs;
    std::map<int, Mat> bases;
    for (int n = 0; n <= m.bound; ++n) {
        long r = m.level(n);
        if (r == 0) {
            bases[n] = Mat(0, 0);
            continue;
        }
        std::vector<Mat> stacked;
        for (int i = 1; i <= n; ++i) stacked.push_back(m.face(n, i));
        Mat ker = n == 0 ? Mat::Identity(r, r)
                         : kernel_basis(vconcat(stacked, r), k);
        bases[n] = ker;
        if (ker.cols() > 0) ranks[n] = ker.cols();
    }
    for (int n = 1; n <= m.bound; ++n) {
        if (!ranks.count(n) || !ranks.count(n - 1)) continue;
        auto d = solve(bases[n - 1], reduce(m.face(n, 0) * bases[n], k), k);
        if (!d) throw Error("Internal", "d_0 escapes the normalized part");
        if (!is_zero(*d)) diffs[n] = *d;
    }
    return ChainComplex(k, ranks, diffs);
}

ChainComplex unnormalized_chains(const SimplicialModule& m) {
    validate(m);
    const Coefficients& k = m.coeff;
    std::map<int, long> ranks;
    std::map<int, Mat> diffs;
    for (auto& [n, r] : m.levels) ranks[n] = r;
    for (int n = 1; n <= m.bound; ++n) {
        if (m.level(n) == 0 || m.level(n - 1) == 0) continue;
        Mat d = Mat::Zero(m.level(n - 1), m.level(n));
        for (int i = 0; i <= n; ++i)
            if (i % 2 == 0)
                d += m.face(n, i);
            else
                d -= m.face(n, i);
        d = reduce(d, k);
        if (!is_zero(d)) diffs[n] = d;
    }
    return ChainComplex(k, ranks, diffs);
}

LatchingResult latching_complex(const SimplicialModule& m) {
    ChainComplex un = unnormalized_chains(m);
    const Coefficients& k = m.coeff;
    std::map<int, long> ranks;
    std::map<int, Mat> diffs;
    std::map<int, Mat> pcomps;
    std::map<int, Mat> sections;
    for (int n = 0; n <= m.bound; ++n) {
        long r = m.level(n);
        if (r == 0) continue;
        std::vector<Mat> degen;
        for (int i = 0; i < n; ++i) degen.push_back(m.degeneracy(n - 1, i));
        Mat latch = degen.empty() ? Mat(r, 0) : image_basis(hconcat(degen, r), k);
        Diagonalization dg = diagonalize(latch, k);
        for (Index t = 0; t < dg.rank; ++t)
            if (!k.is_field() && dg.D(t, t) != 1)
                throw Error("Internal", "latching image not saturated");
        long q = r - dg.rank;
        sections[n] = reduce(dg.Uinv.rightCols(q), k);
        if (q > 0) {
            ranks[n] = q;
            pcomps[n] = reduce(dg.U.bottomRows(q), k);
        }
    }
    for (int n = 1; n <= m.bound; ++n) {
        if (!ranks.count(n) || !ranks.count(n - 1)) continue;
        Mat d = reduce(pcomps[n - 1] * un.diff(n) * sections[n], k);
        if (!is_zero(d)) diffs[n] = d;
    }
    LatchingResult out;
    out.complex = ChainComplex(k, ranks, diffs);
    out.proj = ChainMap{un, out.complex, pcomps};
    return out;
}

namespace {

// Monotone surjections [n] ->> [k] as value sequences, lexicographic order.
std::vector<std::vector<int>> surjections(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    cur.push_back(0);
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == n) {
            if (cur.back() == k) out.push_back(cur);
            return;
        }
        for (int step = 0; step <= 1; ++step) {
            if (cur.back() + step > k) break;
            cur.push_back(cur.back() + step);
            self(self, pos + 1);
            cur.pop_back();
        }
    };
    if (k >= 0 && k <= n) rec(rec, 0);
    return out;
}

struct GammaLevel {
    // blocks in order: (k, surjection values, offset)
    std::vector<int> block_k;
    std::vector<std::vector<int>> block_s;
    std::vector<long> offset;
    long total = 0;
};

GammaLevel gamma_level(const ChainComplex& c, int n) {
    GammaLevel lv;
    for (int k = 0; k <= std::min(n, c.hi()); ++k) {
        if (c.rank(k) == 0) continue;
        for (auto& s : surjections(n, k)) {
            lv.block_k.push_back(k);
            lv.block_s.push_back(s);
            lv.offset.push_back(lv.total);
            lv.total += c.rank(k);
        }
    }
    return lv;
}

long find_block(const GammaLevel& lv, int k, const std::vector<int>& s) {
    for (size_t b = 0; b < lv.block_k.size(); ++b)
        if (lv.block_k[b] == k && lv.block_s[b] == s) return lv.offset[b];
    throw Error("Internal", "gamma block not found");
}

}  // namespace

SimplicialModule gamma(const ChainComplex& c, int margin) {
    if (!c.is_empty() && c.lo() < 0)
        throw NegativeSupport("gamma requires a nonnegatively supported complex");
    const Coefficients& k = c.coefficients();
    SimplicialModule m;
    m.coeff = k;
    m.bound = std::max(0, c.is_empty() ? margin : c.hi() + margin);
    std::vector<GammaLevel> lv(m.bound + 1);
    for (int n = 0; n <= m.bound; ++n) {
        lv[n] = gamma_level(c, n);
        if (lv[n].total > 0) m.levels[n] = lv[n].total;
    }
    // face d_i acts on the summand sigma via the epi-mono factorization of
    // sigma composed with the coface skipping i: identity on the target block
    // when the composite stays surjective, the differential of c when exactly
    // the value 0 is lost, zero otherwise
    for (int n = 1; n <= m.bound; ++n)
        for (int i = 0; i <= n; ++i) {
            if (lv[n].total == 0) continue;
            Mat f = Mat::Zero(lv[n - 1].total, lv[n].total);
            for (size_t b = 0; b < lv[n].block_k.size(); ++b) {
                int kk = lv[n].block_k[b];
                auto& s = lv[n].block_s[b];
                std::vector<int> w(n);
                for (int t = 0; t < n; ++t) w[t] = s[t < i ? t : t + 1];
                std::vector<bool> hit(kk + 1, false);
                for (int v : w) hit[v] = true;
                int missing = -1, count = 0;
                for (int v = 0; v <= kk; ++v)
                    if (!hit[v]) {
                        missing = v;
                        ++count;
                    }
                if (count == 0) {
                    long off = find_block(lv[n - 1], kk, w);
                    f.block(off, lv[n].offset[b], c.rank(kk), c.rank(kk)) +=
                        Mat::Identity(c.rank(kk), c.rank(kk));
                } else if (count == 1 && missing == 0 && kk >= 1) {
                    std::vector<int> tau(n);
                    for (int t = 0; t < n; ++t) tau[t] = w[t] - 1;
                    if (c.rank(kk - 1) > 0) {
                        long off = find_block(lv[n - 1], kk - 1, tau);
                        f.block(off, lv[n].offset[b], c.rank(kk - 1), c.rank(kk)) +=
                            c.diff(kk);
                    }
                }
            }
            f = reduce(f, k);
            if (lv[n - 1].total > 0) m.faces[{n, i}] = f;
        }
    for (int n = 0; n < m.bound; ++n)
        for (int i = 0; i <= n; ++i) {
            if (lv[n].total == 0 || lv[n + 1].total == 0) continue;
            Mat g = Mat::Zero(lv[n + 1].total, lv[n].total);
            for (size_t b = 0; b < lv[n].block_k.size(); ++b) {
                int kk = lv[n].block_k[b];
                auto& s = lv[n].block_s[b];
                std::vector<int> w(n + 2);
                for (int t = 0; t <= n + 1; ++t) w[t] = s[t <= i ? t : t - 1];
                long off = find_block(lv[n + 1], kk, w);
                g.block(off, lv[n].offset[b], c.rank(kk), c.rank(kk)) +=
                    Mat::Identity(c.rank(kk), c.rank(kk));
            }
            m.degeneracies[{n, i}] = reduce(g, k);
        }
    return m;
}

FilteredComplex skeletal_filtration(const SimplicialModule& m) {
    ChainComplex nm = normalized_chains(m);
    const Coefficients& k = m.coeff;
    FilteredComplex f;
    int top = std::max(0, nm.hi());
    for (int p = 0; p <= top; ++p) {
        std::map<int, long> ranks;
        std::map<int, Mat> diffs;
        for (int n = nm.lo(); n <= std::min(p, nm.hi()); ++n) {
            if (nm.rank(n) > 0) ranks[n] = nm.rank(n);
            if (n > nm.lo() && nm.rank(n) > 0 && nm.rank(n - 1) > 0 && !is_zero(nm.diff(n)))
                diffs[n] = nm.diff(n);
        }
        ChainComplex step(k, ranks, diffs);
        if (p > 0) {
            std::map<int, Mat> comps;
            const ChainComplex& prev = f.steps.back();
            for (int n = prev.lo(); n <= prev.hi(); ++n)
                if (prev.rank(n) > 0)
                    comps[n] = Mat::Identity(step.rank(n), prev.rank(n));
            f.incls.push_back(ChainMap{prev, step, comps});
        }
        f.steps.push_back(step);
    }
    return f;
}

std::vector<SpectralSequencePage> simplicial_ss(const SimplicialModule& m) {
    FilteredComplex f = skeletal_filtration(m);
    std::vector<SpectralSequencePage> pages;
    for (int r = 1; r <= f.top() + 2; ++r) pages.push_back(page_at(f, r));
    return pages;
}

ChainComplex complex_from_filtration(const FilteredComplex& f) {
    validate(f);
    const Coefficients& k = f.total().coefficients();
    std::map<int, long> ranks;
    std::map<int, Mat> diffs;
    std::vector<GapObject> gaps;
    for (int p = 0; p <= f.top(); ++p) {
        gaps.push_back(gap(f, p - 1, p));
        const ChainComplex& g = gaps.back().complex;
        for (int n = g.lo(); n <= g.hi(); ++n)
            if (n != p && g.rank(n) > 0)
                throw GapNotConcentrated("gap (" + std::to_string(p - 1) + "," +
                                         std::to_string(p) + ") has a term in degree " +
                                         std::to_string(n));
        if (g.rank(p) > 0) ranks[p] = g.rank(p);
    }
    for (int p = 1; p <= f.top(); ++p) {
        long rp = gaps[p].complex.rank(p), rq = gaps[p - 1].complex.rank(p - 1);
        if (rp == 0 || rq == 0) continue;
        // lift a gap generator into X(p), push down with d, land in X(p-1)
        Mat proj = gaps[p].proj.comp(p);
        auto lift = solve(proj, Mat::Identity(rp, rp), k);
        if (!lift) throw Error("Internal", "gap projection has no section");
        Mat y = reduce(f.steps[p].diff(p) * *lift, k);
        auto w = solve(f.incls[p - 1].comp(p - 1), y, k);
        if (!w)
            throw GapNotConcentrated("differential does not descend to step " +
                                     std::to_string(p - 1));
        Mat d = reduce(gaps[p - 1].proj.comp(p - 1) * *w, k);
        if (!is_zero(d)) diffs[p] = d;
    }
    return ChainComplex(k, ranks, diffs);
}

}  // namespace homalg
