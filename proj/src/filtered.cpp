#include "homalg/filtered.hpp"

namespace homalg {

static Mat partial_embedding(const FilteredComplex& f, int i, int j, int n) {
    // X(i)_n -> X(j)_n composite, 0 <= i <= j <= top
    Mat e = Mat::Identity(f.steps[i].rank(n), f.steps[i].rank(n));
    for (int p = i; p < j; ++p) e = reduce(f.incls[p].comp(n) * e, f.total().coefficients());
    return e;
}

Mat FilteredComplex::embedding(int p, int n) const {
    return partial_embedding(*this, p, top(), n);
}

void validate(const FilteredComplex& f) {
    if (f.steps.empty()) throw ShapeError("filtration: no steps");
    if (f.incls.size() + 1 != f.steps.size())
        throw ShapeError("filtration: need one inclusion per consecutive pair");
    const Coefficients& k = f.total().coefficients();
    for (auto& s : f.steps) {
        require_same(k, s.coefficients());
        validate(s);
    }
    for (int p = 0; p + 1 <= f.top(); ++p) {
        if (f.incls[p].source != f.steps[p] || f.incls[p].target != f.steps[p + 1])
            throw ShapeError("filtration: inclusion endpoints at step " + std::to_string(p));
        validate(f.incls[p]);
        const ChainComplex& s = f.steps[p];
        for (int n = s.lo(); n <= s.hi(); ++n) {
            Mat c = f.incls[p].comp(n);
            if (kernel_basis(c, k).cols() != 0)
                throw ShapeError("filtration: step " + std::to_string(p) +
                                 " not injective in degree " + std::to_string(n));
            if (!k.is_field() &&
                !cokernel_module(c, f.steps[p + 1].rank(n), k).torsion.empty())
                throw ShapeError("filtration: step " + std::to_string(p) +
                                 " not saturated in degree " + std::to_string(n));
        }
    }
}

GapObject gap(const FilteredComplex& f, int i, int j) {
    if (i > j) throw IndexOrder("gap: i > j");
    if (j > f.top()) throw IndexOrder("gap: j above filtration top");
    const Coefficients& k = f.total().coefficients();
    const ChainComplex& xj = f.steps[j];
    GapObject out;
    out.i = i;
    out.j = j;
    std::map<int, long> ranks;
    std::map<int, Mat> diffs;
    std::map<int, Mat> pcomps;
    std::map<int, Mat> icomps;
    std::map<int, Mat> sections;
    for (int n = xj.lo(); n <= xj.hi(); ++n) {
        long r = xj.rank(n);
        Mat a = i < 0 ? Mat(r, 0) : partial_embedding(f, i, j, n);
        Diagonalization dg = diagonalize(a, k);
        for (Index t = 0; t < dg.rank; ++t)
            if (!k.is_field() && dg.D(t, t) != 1)
                throw ShapeError("gap: filtration image not saturated");
        long q = r - dg.rank;
        sections[n] = reduce(dg.Uinv.rightCols(q), k);
        if (q > 0) {
            ranks[n] = q;
            pcomps[n] = reduce(dg.U.bottomRows(q), k);
        }
        if (i >= 0 && !is_zero(a)) icomps[n] = a;
    }
    for (int n = xj.lo() + 1; n <= xj.hi(); ++n) {
        if (!ranks.count(n) || !ranks.count(n - 1)) continue;
        Mat d = reduce(pcomps[n - 1] * xj.diff(n) * sections[n], k);
        if (!is_zero(d)) diffs[n] = d;
    }
    out.complex = ChainComplex(k, ranks, diffs);
    ChainComplex xi = i < 0 ? ChainComplex(k, {}, {}) : f.steps[i];
    out.incl = ChainMap{xi, xj, icomps};
    out.proj = ChainMap{xj, out.complex, pcomps};
    return out;
}

namespace {

// Internal presentation of one subquotient span(zb)/span(rels): canonical
// generators, orders, and the coordinate transform used to present maps.
struct Entry {
    Mat zb;  // ambient lattice basis of the numerator
    Mat u;   // coords in the diagonalized basis = u * (zb-coordinates)
    std::vector<long> free_idx, tors_idx;
    std::vector<Int> tors_ord;
    FgModule module;
    Mat gens;  // ambient columns, free generators first
};

Entry make_entry(const Mat& zb, const Mat& rels, const Coefficients& k) {
    Entry e;
    e.zb = zb;
    auto rb = solve(zb, rels, k);
    if (!rb) throw Error("Internal", "page relations escape the numerator lattice");
    Diagonalization dg = diagonalize(*rb, k);
    e.u = dg.U;
    long z = zb.cols();
    std::vector<Int> tors;
    for (long t = 0; t < z; ++t) {
        if (t < dg.rank) {
            Int d = k.is_field() ? Int(1) : dg.D(t, t);
            if (d != 1) {
                e.tors_idx.push_back(t);
                e.tors_ord.push_back(d);
                tors.push_back(d);
            }
        } else {
            e.free_idx.push_back(t);
        }
    }
    e.module = module_from_cyclics(k, static_cast<long>(e.free_idx.size()), tors);
    Mat basis = reduce(zb * dg.Uinv, k);
    e.gens = Mat(zb.rows(), e.free_idx.size() + e.tors_idx.size());
    long c = 0;
    for (long t : e.free_idx) e.gens.col(c++) = basis.col(t);
    for (long t : e.tors_idx) e.gens.col(c++) = basis.col(t);
    return e;
}

Int mod_pos(const Int& a, const Int& d) {
    Int r = a % d;
    if (r < 0) r += d;
    return r;
}

// Coordinates of the ambient column y on the canonical generators, reduced
// modulo torsion orders.
Vec entry_coords(const Entry& e, const Mat& y, const Coefficients& k) {
    auto w = solve(e.zb, y, k);
    if (!w) throw Error("Internal", "page element outside the numerator lattice");
    Vec v = e.u * w->col(0);
    Vec out(e.free_idx.size() + e.tors_idx.size());
    long c = 0;
    for (long t : e.free_idx) out(c++) = k.is_field() ? mod_pos(v(t), k.p) : v(t);
    for (size_t s = 0; s < e.tors_idx.size(); ++s)
        out(c++) = mod_pos(v(e.tors_idx[s]), e.tors_ord[s]);
    return out;
}

struct Engine {
    const FilteredComplex& f;
    Coefficients k;
    std::map<std::pair<int, int>, Mat> filt_cache;

    explicit Engine(const FilteredComplex& fc) : f(fc), k(fc.total().coefficients()) {}

    // Lattice basis of F_p C_n inside the total complex.
    Mat filt(int p, int n) {
        long r = f.total().rank(n);
        if (p < 0 || r == 0) return Mat(r, 0);
        if (p >= f.top()) return Mat::Identity(r, r);
        auto key = std::make_pair(p, n);
        auto it = filt_cache.find(key);
        if (it != filt_cache.end()) return it->second;
        Mat b = hnf_columns(f.embedding(p, n), k);
        filt_cache[key] = b;
        return b;
    }

    // Z_r^{p,q} = F_p C_{p+q} ∩ d^{-1}(F_{p-r} C_{p+q-1})
    Mat zlat(int p, int q, int r) {
        int n = p + q;
        if (f.total().rank(n) == 0 || p < 0) return Mat(f.total().rank(n), 0);
        Mat pre = preimage_lattice(f.total().diff(n), filt(p - r, n - 1), k);
        return lattice_intersect(filt(p, n), pre, k);
    }

    std::optional<Entry> entry(int p, int q, int r) {
        Mat zb = hnf_columns(zlat(p, q, r), k);
        if (zb.cols() == 0) return std::nullopt;
        Mat prior = zlat(p - 1, q + 1, r - 1);
        Mat hit = zlat(p + r - 1, q - r + 2, r - 1);
        Mat dhit = image_basis(reduce(f.total().diff(p + q + 1) * hit, k), k);
        Mat rels = hnf_columns(lattice_sum(prior, dhit), k);
        return make_entry(zb, rels, k);
    }
};

}  // namespace

SpectralSequencePage page_at(const FilteredComplex& f, int r) {
    validate(f);
    Engine eng(f);
    const ChainComplex& tot = f.total();
    SpectralSequencePage page;
    page.r = r;
    std::map<std::pair<int, int>, Entry> internal;
    for (int p = 0; p <= f.top(); ++p)
        for (int n = tot.lo(); n <= tot.hi(); ++n) {
            auto e = eng.entry(p, n - p, r);
            if (!e || e->module.is_zero()) continue;
            auto key = std::make_pair(p, n - p);
            page.entries[key] = PageEntry{e->module, e->gens, [&] {
                                              std::vector<Int> o(e->free_idx.size(), Int(0));
                                              for (auto& d : e->tors_ord) o.push_back(d);
                                              return o;
                                          }()};
            internal[key] = std::move(*e);
        }
    for (auto& [key, src] : internal) {
        auto [p, q] = key;
        auto tgt = internal.find({p - r, q + r - 1});
        if (tgt == internal.end()) continue;
        int n = p + q;
        Mat m(tgt->second.gens.cols(), src.gens.cols());
        for (long c = 0; c < src.gens.cols(); ++c) {
            Mat y = reduce(tot.diff(n) * src.gens.col(c), eng.k);
            m.col(c) = entry_coords(tgt->second, y, eng.k);
        }
        if (!is_zero(m)) page.differentials[key] = m;
    }
    return page;
}

SpectralSequencePage e1_page(const FilteredComplex& f) { return page_at(f, 1); }

SpectralSequencePage turn_page(const SpectralSequencePage& page, const FilteredComplex& f) {
    SpectralSequencePage check = page_at(f, page.r);
    if (check.entries.size() != page.entries.size() ||
        check.differentials.size() != page.differentials.size())
        throw InconsistentPage("entry support disagrees with recomputation");
    for (auto& [key, e] : check.entries) {
        auto it = page.entries.find(key);
        if (it == page.entries.end() || it->second.module != e.module ||
            it->second.gens != e.gens || it->second.orders != e.orders)
            throw InconsistentPage("entry (" + std::to_string(key.first) + "," +
                                   std::to_string(key.second) + ") disagrees");
    }
    for (auto& [key, d] : check.differentials) {
        auto it = page.differentials.find(key);
        if (it == page.differentials.end() || it->second != d)
            throw InconsistentPage("differential at (" + std::to_string(key.first) + "," +
                                   std::to_string(key.second) + ") disagrees");
    }
    return page_at(f, page.r + 1);
}

std::pair<SpectralSequencePage, ConvergenceReport> e_infinity(const FilteredComplex& f) {
    int rstab = f.top() + 2;
    SpectralSequencePage page = page_at(f, rstab);
    Engine eng(f);
    const ChainComplex& tot = f.total();
    const Coefficients& k = tot.coefficients();
    ConvergenceReport rep;
    rep.ok = true;
    for (int n = tot.lo(); n <= tot.hi(); ++n) {
        Mat cycles = kernel_basis(tot.diff(n), k);
        Mat bdry = image_basis(tot.diff(n + 1), k);
        for (int p = 0; p <= f.top(); ++p) {
            Mat lp = hnf_columns(
                lattice_sum(lattice_intersect(eng.filt(p, n), cycles, k), bdry), k);
            Mat lq = hnf_columns(
                lattice_sum(lattice_intersect(eng.filt(p - 1, n), cycles, k), bdry), k);
            Entry graded = make_entry(lp, lq, k);
            auto key = std::make_pair(p, n - p);
            auto it = page.entries.find(key);
            FgModule einf = it == page.entries.end() ? FgModule::zero(k) : it->second.module;
            if (einf != graded.module) {
                rep.ok = false;
                rep.diagnostic = "E_inf and graded piece differ at (p,q)=(" +
                                 std::to_string(p) + "," + std::to_string(n - p) + ")";
                continue;
            }
            if (einf.is_zero()) continue;
            long t = graded.gens.cols();
            Mat w(t, it->second.gens.cols());
            for (long c = 0; c < w.cols(); ++c)
                w.col(c) = entry_coords(graded, it->second.gens.col(c), k);
            // surjectivity onto the graded piece; same invariant factors then
            // force an isomorphism
            std::vector<Int> orders(graded.free_idx.size(), Int(0));
            for (auto& d : graded.tors_ord) orders.push_back(d);
            Mat diag = Mat::Zero(t, t);
            for (long i = 0; i < t; ++i) diag(i, i) = orders[i];
            if (!cokernel_module(hconcat({w, diag}, t), t, k).is_zero()) {
                rep.ok = false;
                rep.diagnostic = "comparison map not surjective at (p,q)=(" +
                                 std::to_string(p) + "," + std::to_string(n - p) + ")";
                continue;
            }
            rep.witnesses[key] = w;
        }
    }
    return {page, rep};
}

FilteredComplex make_injective(const std::vector<ChainComplex>& steps,
                               const std::vector<ChainMap>& maps) {
    if (steps.empty()) throw ShapeError("make_injective: no steps");
    if (maps.size() + 1 != steps.size())
        throw ShapeError("make_injective: need one map per consecutive pair");
    for (size_t p = 0; p < maps.size(); ++p) {
        if (maps[p].source != steps[p] || maps[p].target != steps[p + 1])
            throw CompositionMismatch("make_injective: map endpoints at step " +
                                      std::to_string(p));
        validate(maps[p]);
    }
    const Coefficients& k = steps[0].coefficients();
    FilteredComplex out;
    out.steps.push_back(steps[0]);
    ChainMap retract = identity_map(steps[0]);  // T(p) -> X(p)
    for (size_t p = 1; p < steps.size(); ++p) {
        ChainMap g = compose(maps[p - 1], retract);
        const ChainComplex& t = out.steps.back();
        const ChainComplex& x = steps[p];
        // cylinder of g: T_n + T_{n-1} + X_n, d(a,b,y) = (da - b, -db, dy + gb)
        std::map<int, long> ranks;
        std::map<int, Mat> diffs;
        int lo = std::min(t.lo(), x.lo());
        int hi = std::max(t.hi() + 1, x.hi());
        for (int n = lo; n <= hi; ++n) {
            long r = t.rank(n) + t.rank(n - 1) + x.rank(n);
            if (r > 0) ranks[n] = r;
        }
        for (int n = lo + 1; n <= hi; ++n) {
            long rows = t.rank(n - 1) + t.rank(n - 2) + x.rank(n - 1);
            long cols = t.rank(n) + t.rank(n - 1) + x.rank(n);
            if (rows == 0 || cols == 0) continue;
            Mat d = Mat::Zero(rows, cols);
            d.block(0, 0, t.rank(n - 1), t.rank(n)) = t.diff(n);
            d.block(0, t.rank(n), t.rank(n - 1), t.rank(n - 1)) =
                -Mat::Identity(t.rank(n - 1), t.rank(n - 1));
            d.block(t.rank(n - 1), t.rank(n), t.rank(n - 2), t.rank(n - 1)) = -t.diff(n - 1);
            d.block(t.rank(n - 1) + t.rank(n - 2), t.rank(n), x.rank(n - 1), t.rank(n - 1)) =
                g.comp(n - 1);
            d.block(t.rank(n - 1) + t.rank(n - 2), t.rank(n) + t.rank(n - 1), x.rank(n - 1),
                    x.rank(n)) = x.diff(n);
            if (!is_zero(d)) diffs[n] = reduce(d, k);
        }
        ChainComplex cyl(k, ranks, diffs);
        std::map<int, Mat> icomps, rcomps;
        for (int n = lo; n <= hi; ++n) {
            long cols = t.rank(n) + t.rank(n - 1) + x.rank(n);
            if (cols == 0) continue;
            if (t.rank(n) > 0) {
                Mat inc = Mat::Zero(cols, t.rank(n));
                inc.block(0, 0, t.rank(n), t.rank(n)) =
                    Mat::Identity(t.rank(n), t.rank(n));
                icomps[n] = inc;
            }
            if (x.rank(n) > 0) {
                Mat r = Mat::Zero(x.rank(n), cols);
                r.block(0, 0, x.rank(n), t.rank(n)) = g.comp(n);
                r.block(0, t.rank(n) + t.rank(n - 1), x.rank(n), x.rank(n)) =
                    Mat::Identity(x.rank(n), x.rank(n));
                if (!is_zero(r)) rcomps[n] = reduce(r, k);
            }
        }
        out.incls.push_back(ChainMap{t, cyl, icomps});
        retract = ChainMap{cyl, x, rcomps};
        out.steps.push_back(cyl);
    }
    return out;
}

}  // namespace homalg
