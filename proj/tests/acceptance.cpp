// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
// argv[1] = path to the CLI binary, argv[2] = golden file directory.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "homalg/derived.hpp"
#include "homalg/doldkan.hpp"
#include "homalg/generators.hpp"
#include "homalg/oracle.hpp"
#include "homalg/triangles.hpp"

using namespace homalg;

namespace {

const Coefficients Z = Coefficients::integers();

bool check_snf() {
    SplitMix64 rng(1);
    for (int i = 0; i < 1000; ++i) {
        long r = rng.range(0, 6), c = rng.range(0, 6);
        Mat a = random_matrix(rng, r, c, 9);
        auto dg = diagonalize(a, Z);
        if (dg.D != dg.U * a * dg.V) return false;
        if (dg.U * dg.Uinv != Mat::Identity(r, r)) return false;
        if (dg.V * dg.Vinv != Mat::Identity(c, c)) return false;
        Int du = det_bareiss(dg.U), dv = det_bareiss(dg.V);
        if ((du != 1 && du != -1) || (dv != 1 && dv != -1)) return false;
        Int prev = 0;
        for (long j = 0; j < std::min(r, c); ++j) {
            for (long k = 0; k < r; ++k)
                if (k != j && dg.D(k, j) != 0) return false;
            Int d = dg.D(j, j);
            if (d < 0) return false;
            if (j > 0 && d != 0 && (prev == 0 || d % prev != 0)) return false;
            prev = d;
        }
    }
    return true;
}

bool check_cone_les() {
    SplitMix64 rng(2);
    for (int i = 0; i < 200; ++i) {
        int lo = static_cast<int>(rng.range(-3, 2));
        int hi = lo + static_cast<int>(rng.range(0, 3));
        auto a = random_complex(rng, Z, lo, hi, 4);
        auto b = random_complex(rng, Z, lo, std::min(hi + 1, 5), 4);
        auto f = random_chain_map(rng, a, b);
        if (!cone_les_exact(f)) return false;
    }
    return true;
}

bool check_triangles() {
    SplitMix64 rng(3);
    for (int i = 0; i < 100; ++i) {
        auto a = random_complex(rng, Z, -1, 2, 2);
        auto b = random_complex(rng, Z, -1, 2, 2);
        auto f = random_chain_map(rng, a, b);
        // TR1 and TR2, both directions of rotation
        auto t = triangle_of(f);
        if (!verify_distinguished(t).ok) return false;
        auto r1 = rotate(t);
        if (!verify_distinguished(r1).ok) return false;
        if (!verify_distinguished(rotate(r1)).ok) return false;
        // TR3 on the strictly commuting square (id, g) between f and g∘f
        auto c = random_complex(rng, Z, -1, 2, 2);
        auto g = random_chain_map(rng, b, c);
        auto gf = compose(g, f);
        ChainMap idA{a, a, {}};
        for (auto& [n, r] : a.ranks()) idA.comps[n] = Mat::Identity(r, r);
        auto filler = cone_functor_map(f, gf, idA, g);
        validate(filler);
        auto tf = triangle_of(f), tgf = triangle_of(gf);
        if (compose(filler, tf.g).comps != compose(tgf.g, g).comps) return false;
        if (compose(tgf.h, filler).comps != compose(shift_map(idA, 1), tf.h).comps)
            return false;
        // TR4
        auto o = octahedron(f, g);
        if (!verify_distinguished(o.t_f).ok || !verify_distinguished(o.t_g).ok ||
            !verify_distinguished(o.t_gf).ok || !verify_distinguished(o.t_link).ok)
            return false;
    }
    // a candidate that must be rejected: X --id--> X --0--> X --0--> X[1]
    auto x = ChainComplex(Z, {{0, 1}}, {});
    ChainMap idx{x, x, {{0, mat(1, 1, {1})}}};
    Triangle bad{x, x, x, idx, zero_map(x, x), zero_map(x, shift(x, 1)),
                 ChainHomotopy{zero_map(x, x), zero_map(x, x), {}}};
    return !verify_distinguished(bad).ok;
}

bool check_derived() {
    SplitMix64 rng(4);
    // against the element-counting oracles on cyclic modules
    for (int i = 0; i < 50; ++i) {
        long a = rng.range(1, 30), b = rng.range(1, 30);
        int n = static_cast<int>(rng.range(0, 3));
        if (ext(FgModule::cyclic(Z, a), FgModule::cyclic(Z, b), n) !=
            brute_ext_cyclic(a, b, n))
            return false;
        if (tor(FgModule::cyclic(Z, a), FgModule::cyclic(Z, b), n) !=
            brute_tor_cyclic(a, b, n))
            return false;
    }
    for (int i = 0; i < 30; ++i) {
        auto m = random_module(rng, Z), n = random_module(rng, Z);
        for (int d = 0; d <= 2; ++d)
            if (tor(m, n, d) != tor(n, m, d)) return false;
    }
    // independence of the resolution: pad with a contractible summand
    for (int i = 0; i < 30; ++i) {
        auto m = random_module(rng, Z), n = random_module(rng, Z);
        auto rm = free_resolution(m).complex, rn = free_resolution(n).complex;
        auto pad = ChainComplex(Z, {{1, 1}, {2, 1}}, {{2, mat(1, 1, {1})}});
        auto rm2 = direct_sum(rm, pad);
        for (int d = 0; d <= 3; ++d) {
            if (homology(hom_complex(rm2, rn), -d) != ext(m, n, d)) return false;
            if (homology(tensor_complex(rm2, rn), d) != tor(m, n, d)) return false;
        }
    }
    return true;
}

bool check_truncation() {
    SplitMix64 rng(5);
    for (int i = 0; i < 50; ++i) {
        auto c = random_complex(rng, Z, -2, 3, 3);
        int n = static_cast<int>(rng.range(-2, 3));
        auto up = truncate_geq(c, n);
        auto down = truncate_leq(c, n - 1);
        validate(up.incl);
        validate(down.proj);
        for (int m = -3; m <= 4; ++m) {
            auto zero = FgModule::zero(Z);
            if (homology(up.complex, m) != (m >= n ? homology(c, m) : zero)) return false;
            if (homology(down.complex, m) != (m < n ? homology(c, m) : zero)) return false;
            if (heart_pi(c, m) != homology(c, m)) return false;
        }
        // both truncation orders give the same homology window for all m >= n
        for (int m = n; m <= 3; ++m) {
            auto ab = truncate_leq(truncate_geq(c, n).complex, m).complex;
            auto ba = truncate_geq(truncate_leq(c, m).complex, n).complex;
            for (int d = -3; d <= 4; ++d)
                if (homology(ab, d) != homology(ba, d)) return false;
        }
        // the truncation triangle is distinguished with the zero connecting map
        Triangle t{up.complex, c, down.complex, up.incl, down.proj,
                   zero_map(down.complex, shift(up.complex, 1)),
                   ChainHomotopy{compose(down.proj, up.incl),
                                 zero_map(up.complex, down.complex), {}}};
        if (!verify_distinguished(t).ok) return false;
    }
    return true;
}

bool d_squares_to_zero(const FilteredComplex& f) {
    for (int r = 1; r <= f.top() + 2; ++r) {
        auto page = page_at(f, r);
        for (auto& [key, d1] : page.differentials) {
            auto next = page.differentials.find({key.first - r, key.second + r - 1});
            if (next == page.differentials.end()) continue;
            auto tgt = page.entries.at({key.first - 2 * r, key.second + 2 * (r - 1)});
            Mat prod = next->second * d1;
            for (long i = 0; i < prod.rows(); ++i)
                for (long j = 0; j < prod.cols(); ++j) {
                    Int v = prod(i, j);
                    if (tgt.orders[i] != 0) v %= tgt.orders[i];
                    if (v != 0) return false;
                }
        }
    }
    return true;
}

bool check_spectral() {
    SplitMix64 rng(6);
    for (int i = 0; i < 50; ++i) {
        auto f = random_filtration(rng, Z, static_cast<int>(rng.range(1, 4)), 0, 2, 2);
        if (!d_squares_to_zero(f)) return false;
        if (!e_infinity(f).second.ok) return false;
    }
    // two-step filtration of (Z --2--> Z) by the degree-0 line: d_1 is the
    // connecting map of the pair, multiplication by ±2, and E_2 is Z/2
    auto total = ChainComplex(Z, {{0, 1}, {1, 1}}, {{1, mat(1, 1, {2})}});
    auto sub = ChainComplex(Z, {{0, 1}}, {});
    FilteredComplex two{{sub, total}, {ChainMap{sub, total, {{0, mat(1, 1, {1})}}}}};
    auto e1 = page_at(two, 1);
    auto d10 = e1.differentials.find({1, 0});
    if (d10 == e1.differentials.end()) return false;
    Int conn = d10->second(0, 0);
    if (conn != 2 && conn != -2) return false;
    auto e2 = page_at(two, 2);
    if (e2.entries.size() != 1 ||
        e2.entries.at({0, 0}).module != FgModule::cyclic(Z, 2))
        return false;
    // random two-step filtrations: E_2 equals the terms the LES of the pair
    // forces, i.e. the image of H(sub) in H(total) at p = 0 and the quotient
    // by it at p = 1, both computed here from raw cycle lattices
    for (int i = 0; i < 20; ++i) {
        auto f = random_filtration(rng, Z, 2, 0, 2, 2);
        auto& x = f.total();
        auto e2r = page_at(f, 2);
        for (int n = x.lo() - 1; n <= x.hi() + 1; ++n) {
            Mat za = kernel_basis(f.steps[0].diff(n), Z);
            Mat zx = kernel_basis(x.diff(n), Z);
            Mat bx = image_basis(x.diff(n + 1), Z);
            Mat ia = reduce(f.incls[0].comp(n) * za, Z);
            auto im = subquotient(hnf_columns(lattice_sum(ia, bx), Z), bx, Z);
            auto quot = subquotient(zx, hnf_columns(lattice_sum(bx, ia), Z), Z);
            auto get = [&](int p, int q) {
                auto it = e2r.entries.find({p, q});
                return it == e2r.entries.end() ? FgModule::zero(Z) : it->second.module;
            };
            if (get(0, n) != im) return false;
            if (get(1, n - 1) != quot) return false;
        }
    }
    // double complexes: E_infinity of the column filtration reassembles the
    // homology of the tensor total complex
    for (int i = 0; i < 8; ++i) {
        auto a = random_complex(rng, Z, 0, 3, 2);
        auto b = random_complex(rng, Z, 0, 3, 2);
        auto f = column_filtration(a, b);
        auto [einf, rep] = e_infinity(f);
        if (!rep.ok) return false;
        auto t = tensor_complex(a, b);
        for (int n = t.lo(); n <= t.hi(); ++n) {
            long free_sum = 0;
            Int order = 1;
            for (auto& [key, e] : einf.entries)
                if (key.first + key.second == n) {
                    free_sum += e.module.free_rank;
                    order *= e.module.free_rank == 0 ? e.module.order() : 1;
                }
            auto h = homology(t, n);
            if (free_sum != h.free_rank) return false;
            if (h.free_rank == 0 && order != h.order()) return false;
        }
    }
    return true;
}

bool check_doldkan() {
    SplitMix64 rng(7);
    for (int i = 0; i < 50; ++i) {
        auto c = random_complex(rng, Z, 0, 3, 2);
        auto m = gamma(c);
        validate(m);
        if (!(normalized_chains(m) == c)) return false;
    }
    for (int i = 0; i < 10; ++i) {
        auto c = random_complex(rng, Z, 0, 2, 2);
        auto m = gamma(c, 1);
        // latching quotient is isomorphic to the normalized chains
        auto lat = latching_complex(m);
        auto nm = normalized_chains(m);
        if (lat.complex.ranks() != nm.ranks()) return false;
        for (int n = nm.lo(); n <= nm.hi(); ++n)
            if (homology(lat.complex, n) != homology(nm, n)) return false;
        // skeletal gaps concentrate in one degree and rebuild the complex
        auto f = skeletal_filtration(m);
        if (!(complex_from_filtration(f) == nm)) return false;
        // the skeletal spectral sequence degenerates at E_2
        auto pages = simplicial_ss(m);
        for (size_t r = 1; r < pages.size(); ++r)
            if (!pages[r].differentials.empty()) return false;
        for (auto& [key, e] : pages[1].entries) {
            if (key.second != 0) return false;
            if (e.module != homology(nm, key.first)) return false;
        }
    }
    return true;
}

std::string run_cli(const std::string& cli, const std::string& dir,
                    const std::string& args) {
    std::string cmd = "cd '" + dir + "' && '" + cli + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    pclose(pipe);
    return out;
}

bool check_cli(const std::string& cli, const std::string& dir) {
    struct Case {
        const char* args;
        const char* expected;
    };
    const Case cases[] = {
        {"homology complex_x2.json", "homology_x2.expected"},
        {"homology complex_x2.json --json", "homology_x2_json.expected"},
        {"homology complex_random.json", "homology_random.expected"},
        {"homology complex_f5.json", "homology_f5.expected"},
        {"ext module_z4.json module_z1z6.json", "ext_z4_z1z6.expected"},
        {"tor module_z4.json module_z1z6.json --json", "tor_z4_z1z6.expected"},
        {"ss filtered_random.json --report", "ss_random.expected"},
        {"ss filtered_double.json --json", "ss_double.expected"},
        {"dold-kan simplicial_tower.json --ss", "doldkan_tower.expected"},
        {"dold-kan simplicial_random.json --json", "doldkan_random.expected"},
        {"cone map_cone.json", "cone_map.expected"},
    };
    for (auto& c : cases) {
        std::ifstream in(dir + "/" + c.expected, std::ios::binary);
        if (!in) {
            std::cerr << "missing golden file " << c.expected << "\n";
            return false;
        }
        std::ostringstream want;
        want << in.rdbuf();
        // byte-exact, and byte-identical across two runs
        std::string first = run_cli(cli, dir, c.args);
        std::string second = run_cli(cli, dir, c.args);
        if (first != want.str() || second != first) {
            std::cerr << "mismatch for: " << c.args << "\n";
            return false;
        }
    }
    return true;
}

int report(int num, const char* what, bool ok) {
    std::cout << "[" << num << "] " << what << ": " << (ok ? "pass" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <cli-binary> <golden-dir>\n";
        return 2;
    }
    int failures = 0;
    failures += report(1, "Smith normal form with tracked unimodular transforms, 1000 random matrices", check_snf());
    failures += report(2, "long exact homology sequence of 200 random mapping cones", check_cone_les());
    failures += report(3, "triangulated axioms TR1-TR4 on 100 seeded instances plus a rejected candidate", check_triangles());
    failures += report(4, "Ext/Tor against brute-force oracles, Tor symmetry, resolution independence", check_derived());
    failures += report(5, "good truncations: commutation of the two orders, heart, truncation triangle", check_truncation());
    failures += report(6, "spectral sequences: d_r^2 = 0, connecting map, double complex convergence", check_spectral());
    failures += report(7, "Dold-Kan: N(Gamma(C)) = C bit-exact, latching, skeletal degeneration", check_doldkan());
    failures += report(8, "CLI golden files byte-exact and deterministic across runs", check_cli(argv[1], argv[2]));
    return failures == 0 ? 0 : 1;
}
