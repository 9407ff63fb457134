#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "homalg/derived.hpp"
#include "homalg/generators.hpp"
#include "homalg/io.hpp"
#include "homalg/oracle.hpp"
#include "homalg/triangles.hpp"

using namespace homalg;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("IoError", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// table cell such as "0", "free 2", "torsion [2,6]", "free 1, torsion [3]"
std::string desc(const FgModule& m) {
    if (m.is_zero()) return "0";
    std::string out;
    if (m.free_rank > 0) out += "free " + std::to_string(m.free_rank);
    if (!m.torsion.empty()) {
        if (!out.empty()) out += ", ";
        out += "torsion [";
        for (size_t i = 0; i < m.torsion.size(); ++i) {
            if (i) out += ",";
            out += m.torsion[i].get_str();
        }
        out += "]";
    }
    return out;
}

std::string grid_cell(const FgModule& m) {
    std::string s = m.to_string();
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == ' ') continue;
        out += s[i];
    }
    return out;
}

JValue jbool(bool b) {
    JValue v;
    v.kind = JValue::Kind::Bool;
    v.boolean = b;
    return v;
}

JValue module_row(const FgModule& m) {
    JValue row = JValue::obj();
    row.set("free_rank", JValue::of(Int(m.free_rank)));
    JValue tors = JValue::arr();
    for (auto& t : m.torsion) tors.array.push_back(JValue::of(t));
    row.set("torsion", std::move(tors));
    return row;
}

JValue page_json(const SpectralSequencePage& page) {
    JValue pv = JValue::obj();
    pv.set("r", JValue::of(Int(page.r)));
    JValue ev = JValue::arr();
    for (auto& [key, e] : page.entries) {
        JValue row = module_row(e.module);
        row.set("p", JValue::of(Int(key.first)));
        row.set("q", JValue::of(Int(key.second)));
        ev.array.push_back(std::move(row));
    }
    pv.set("entries", std::move(ev));
    JValue dv = JValue::arr();
    for (auto& [key, m] : page.differentials) {
        JValue row = JValue::obj();
        row.set("p", JValue::of(Int(key.first)));
        row.set("q", JValue::of(Int(key.second)));
        JValue mat = JValue::arr();
        for (long i = 0; i < m.rows(); ++i) {
            JValue r2 = JValue::arr();
            for (long j = 0; j < m.cols(); ++j) r2.array.push_back(JValue::of(Int(m(i, j))));
            mat.array.push_back(std::move(r2));
        }
        row.set("matrix", std::move(mat));
        dv.array.push_back(std::move(row));
    }
    pv.set("differentials", std::move(dv));
    return pv;
}

void print_page(std::ostream& os, const SpectralSequencePage& page, int top) {
    os << "page " << page.r << "\n";
    if (page.entries.empty()) {
        os << "  (empty)\n";
        return;
    }
    int qlo = 0, qhi = 0;
    bool first = true;
    for (auto& [key, e] : page.entries) {
        if (first || key.second < qlo) qlo = key.second;
        if (first || key.second > qhi) qhi = key.second;
        first = false;
    }
    // p horizontal, q vertical, origin at the bottom left
    for (int q = qhi; q >= qlo; --q) {
        os << "  q=" << q << ":";
        for (int p = 0; p <= top; ++p) {
            auto it = page.entries.find({p, q});
            os << "  " << (it == page.entries.end() ? "." : grid_cell(it->second.module));
        }
        os << "\n";
    }
    std::string axis = "  p =";
    for (int p = 0; p <= top; ++p) axis += "  " + std::to_string(p);
    os << axis << "\n";
}

const ChainComplex& as_complex(const Document& d) {
    if (d.kind != Document::Kind::Complex) throw SchemaError("/type", "expected a complex");
    return d.complex;
}

const FgModule& as_module(const Document& d) {
    if (d.kind != Document::Kind::Module) throw SchemaError("/type", "expected a module");
    return d.module;
}

int run_suite(const std::string& suite, uint64_t seed, int cases) {
    SplitMix64 rng(seed);
    const Coefficients Z = Coefficients::integers();
    int passed = 0;
    for (int i = 0; i < cases; ++i) {
        bool ok = true;
        if (suite == "triangles") {
            auto a = random_complex(rng, Z, -1, 2, 2);
            auto b = random_complex(rng, Z, -1, 2, 2);
            auto f = random_chain_map(rng, a, b);
            auto t = triangle_of(f);
            ok = verify_distinguished(t).ok && verify_distinguished(rotate(t)).ok;
            Triangle bad = t;
            bad.h = add(t.h, t.h);
            if (!t.h.comps.empty() && verify_distinguished(bad).ok) ok = false;
        } else if (suite == "tstructure") {
            auto c = random_complex(rng, Z, -1, 2, 2);
            int n = static_cast<int>(rng.range(-1, 2));
            auto up = truncate_geq(c, n);
            auto down = truncate_leq(c, n - 1);
            for (int m = -2; m <= 3; ++m) {
                if (homology(up.complex, m) !=
                    (m >= n ? homology(c, m) : FgModule::zero(Z)))
                    ok = false;
                if (homology(down.complex, m) !=
                    (m <= n - 1 ? homology(c, m) : FgModule::zero(Z)))
                    ok = false;
            }
            Triangle t{up.complex,
                       c,
                       down.complex,
                       up.incl,
                       down.proj,
                       zero_map(down.complex, shift(up.complex, 1)),
                       ChainHomotopy{compose(down.proj, up.incl),
                                     zero_map(up.complex, down.complex),
                                     {}}};
            ok = ok && verify_distinguished(t).ok;
        } else if (suite == "ss") {
            auto f = random_filtration(rng, Z, static_cast<int>(rng.range(1, 3)), 0, 2, 2);
            auto [einf, rep] = e_infinity(f);
            ok = rep.ok;
            for (int r = 1; ok && r <= f.top() + 2; ++r) {
                auto page = page_at(f, r);
                for (auto& [key, m1] : page.differentials) {
                    auto it = page.differentials.find(
                        {key.first - r, key.second + r - 1});
                    if (it == page.differentials.end()) continue;
                    auto& tgt = page.entries.at(
                        {key.first - 2 * r, key.second + 2 * (r - 1)});
                    Mat prod = it->second * m1;
                    for (long a2 = 0; a2 < prod.rows(); ++a2)
                        for (long b2 = 0; b2 < prod.cols(); ++b2) {
                            Int v = prod(a2, b2);
                            if (tgt.orders[a2] != 0) v %= tgt.orders[a2];
                            if (v != 0) ok = false;
                        }
                }
            }
        } else if (suite == "doldkan") {
            auto c = random_complex(rng, Z, 0, 2, 2);
            auto m = gamma(c);
            ok = normalized_chains(m) == c &&
                 latching_complex(m).complex.ranks() == normalized_chains(m).ranks();
        } else {
            throw Error("UsageError", "unknown suite " + suite);
        }
        if (ok) ++passed;
    }
    return passed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "homalg: exact homological algebra over Z and F_p.\n"
        "Spectral sequence grids print p horizontally and q vertically with the\n"
        "origin at the bottom left.  Output is plain text; the only environment\n"
        "variable consulted is NO_COLOR (colors are never emitted anyway).\n"
        "Seeded commands expand one 64-bit seed with a splitmix generator, so\n"
        "identical inputs and seeds give byte-identical output."};
    app.require_subcommand(1);

    std::string file, file2, suite;
    int degree = 0;
    bool has_degree = false, want_json = false, want_report = false, want_ss = false;
    int maxn = 3, pages = 0, geq = 0, leq = 0;
    bool has_geq = false, has_leq = false;
    uint64_t seed = 0;
    int cases = 20;

    auto* c_hom = app.add_subcommand("homology", "homology of a complex document");
    c_hom->add_option("file", file)->required();
    c_hom->add_option("--degree", degree)->trigger_on_parse();
    c_hom->add_flag("--json", want_json);

    auto* c_ext = app.add_subcommand("ext", "Ext groups of two module documents");
    c_ext->add_option("M", file)->required();
    c_ext->add_option("N", file2)->required();
    c_ext->add_option("--max", maxn);
    c_ext->add_flag("--json", want_json);

    auto* c_tor = app.add_subcommand("tor", "Tor groups of two module documents");
    c_tor->add_option("M", file)->required();
    c_tor->add_option("N", file2)->required();
    c_tor->add_option("--max", maxn);
    c_tor->add_flag("--json", want_json);

    auto* c_cone = app.add_subcommand("cone", "mapping cone of a map document");
    c_cone->add_option("file", file)->required();
    c_cone->add_flag("--json", want_json);

    auto* c_trunc = app.add_subcommand("truncate", "good truncation of a complex document");
    auto* og = c_trunc->add_option("--geq", geq);
    auto* ol = c_trunc->add_option("--leq", leq);
    c_trunc->add_option("file", file)->required();
    c_trunc->add_flag("--json", want_json);

    auto* c_ss = app.add_subcommand("ss", "spectral sequence of a filtered document");
    c_ss->add_option("file", file)->required();
    c_ss->add_option("--pages", pages);
    c_ss->add_flag("--report", want_report);
    c_ss->add_flag("--json", want_json);

    auto* c_dk = app.add_subcommand("dold-kan", "normalized chains of a simplicial document");
    c_dk->add_option("file", file)->required();
    c_dk->add_flag("--ss", want_ss);
    c_dk->add_flag("--json", want_json);

    auto* c_ver = app.add_subcommand("verify", "run a randomized invariant suite");
    c_ver->add_option("file", file);
    c_ver->add_option("--suite", suite)->required();
    c_ver->add_option("--seed", seed);
    c_ver->add_option("--cases", cases);
    c_ver->add_flag("--json", want_json);

    CLI11_PARSE(app, argc, argv);
    has_degree = c_hom->count("--degree") > 0;
    has_geq = og->count() > 0;
    has_leq = ol->count() > 0;

    try {
        if (app.got_subcommand(c_hom)) {
            auto c = as_complex(parse_document(read_file(file)));
            JValue rows = JValue::arr();
            int lo = has_degree ? degree : c.lo();
            int hi = has_degree ? degree : c.hi();
            for (int n = lo; n <= hi; ++n) {
                auto h = homology(c, n);
                if (want_json) {
                    JValue row = module_row(h);
                    row.set("degree", JValue::of(Int(n)));
                    rows.array.push_back(std::move(row));
                } else {
                    std::cout << n << ": " << desc(h) << "\n";
                }
            }
            if (want_json) {
                JValue out = JValue::obj();
                out.set("command", JValue::of(std::string("homology")));
                out.set("rows", std::move(rows));
                std::cout << json_emit(out) << "\n";
            }
        } else if (app.got_subcommand(c_ext) || app.got_subcommand(c_tor)) {
            bool is_ext = app.got_subcommand(c_ext);
            auto m = as_module(parse_document(read_file(file)));
            auto n = as_module(parse_document(read_file(file2)));
            JValue rows = JValue::arr();
            for (int d = 0; d <= maxn; ++d) {
                auto val = is_ext ? ext(m, n, d) : tor(m, n, d);
                if (want_json) {
                    JValue row = module_row(val);
                    row.set("n", JValue::of(Int(d)));
                    rows.array.push_back(std::move(row));
                } else {
                    std::cout << d << ": " << desc(val) << "\n";
                }
            }
            if (want_json) {
                JValue out = JValue::obj();
                out.set("command", JValue::of(std::string(is_ext ? "ext" : "tor")));
                out.set("rows", std::move(rows));
                std::cout << json_emit(out) << "\n";
            }
        } else if (app.got_subcommand(c_cone)) {
            auto d = parse_document(read_file(file));
            if (d.kind != Document::Kind::Map) throw SchemaError("/type", "expected a map");
            auto c = cone(d.map);
            bool exact = cone_les_exact(d.map);
            std::string doc = emit_document(complex_document(c.complex));
            if (want_json) {
                JValue out = JValue::obj();
                out.set("command", JValue::of(std::string("cone")));
                out.set("complex", json_parse(doc));
                out.set("les_exact", jbool(exact));
                std::cout << json_emit(out) << "\n";
            } else {
                std::cout << doc << "\n";
                std::cout << "long exact sequence: " << (exact ? "exact" : "NOT exact")
                          << "\n";
            }
        } else if (app.got_subcommand(c_trunc)) {
            if (has_geq == has_leq)
                throw Error("UsageError", "pass exactly one of --geq or --leq");
            auto c = as_complex(parse_document(read_file(file)));
            ChainComplex t =
                has_geq ? truncate_geq(c, geq).complex : truncate_leq(c, leq).complex;
            std::cout << emit_document(complex_document(t)) << "\n";
        } else if (app.got_subcommand(c_ss)) {
            auto d = parse_document(read_file(file));
            if (d.kind != Document::Kind::Filtered)
                throw SchemaError("/type", "expected a filtered complex");
            int last = pages > 0 ? pages : d.filtered.top() + 2;
            if (want_json) {
                JValue out = JValue::obj();
                out.set("command", JValue::of(std::string("ss")));
                JValue pv = JValue::arr();
                for (int r = 1; r <= last; ++r)
                    pv.array.push_back(page_json(page_at(d.filtered, r)));
                out.set("pages", std::move(pv));
                if (want_report) {
                    auto [einf, rep] = e_infinity(d.filtered);
                    out.set("converges", jbool(rep.ok));
                }
                std::cout << json_emit(out) << "\n";
            } else {
                for (int r = 1; r <= last; ++r)
                    print_page(std::cout, page_at(d.filtered, r), d.filtered.top());
                if (want_report) {
                    auto [einf, rep] = e_infinity(d.filtered);
                    std::cout << "convergence: " << (rep.ok ? "ok" : rep.diagnostic)
                              << "\n";
                }
            }
        } else if (app.got_subcommand(c_dk)) {
            auto d = parse_document(read_file(file));
            if (d.kind != Document::Kind::Simplicial)
                throw SchemaError("/type", "expected a simplicial module");
            auto nm = normalized_chains(d.simplicial);
            std::string doc = emit_document(complex_document(nm));
            if (want_json) {
                JValue out = JValue::obj();
                out.set("command", JValue::of(std::string("dold-kan")));
                out.set("complex", json_parse(doc));
                if (want_ss) {
                    JValue pv = JValue::arr();
                    for (auto& page : simplicial_ss(d.simplicial))
                        pv.array.push_back(page_json(page));
                    out.set("pages", std::move(pv));
                }
                std::cout << json_emit(out) << "\n";
            } else {
                std::cout << doc << "\n";
                if (want_ss) {
                    auto f = skeletal_filtration(d.simplicial);
                    for (auto& page : simplicial_ss(d.simplicial))
                        print_page(std::cout, page, f.top());
                }
            }
        } else if (app.got_subcommand(c_ver)) {
            int passed = run_suite(suite, seed, cases);
            if (want_json) {
                JValue out = JValue::obj();
                out.set("command", JValue::of(std::string("verify")));
                out.set("suite", JValue::of(suite));
                out.set("passed", JValue::of(Int(passed)));
                out.set("cases", JValue::of(Int(cases)));
                std::cout << json_emit(out) << "\n";
            } else {
                std::cout << passed << "/" << cases << "\n";
            }
            return passed == cases ? 0 : 1;
        }
    } catch (const Error& e) {
        JValue err = JValue::obj();
        err.set("code", JValue::of(e.code));
        err.set("message", JValue::of(std::string(e.what())));
        std::cerr << json_emit(err) << "\n";
        return 1;
    } catch (const std::exception& e) {
        JValue err = JValue::obj();
        err.set("code", JValue::of(std::string("Internal")));
        err.set("message", JValue::of(std::string(e.what())));
        std::cerr << json_emit(err) << "\n";
        return 1;
    }
    return 0;
}
