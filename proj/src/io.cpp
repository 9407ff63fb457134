#include "homalg/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "json.hpp"

namespace homalg {

const JValue* JValue::get(const std::string& key) const {
    for (auto& [k, v] : object)
        if (k == key) return &v;
    return nullptr;
}

namespace {

bool integer_token(const std::string& s) {
    size_t i = s.size() && s[0] == '-' ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

// SAX builder keeping arbitrary-precision integers via the raw token string.
struct Builder {
    std::vector<JValue*> stack;
    JValue root;
    std::string pending_key;
    bool has_root = false;

    JValue* place(JValue v) {
        if (stack.empty()) {
            root = std::move(v);
            has_root = true;
            return &root;
        }
        JValue* top = stack.back();
        if (top->kind == JValue::Kind::Array) {
            top->array.push_back(std::move(v));
            return &top->array.back();
        }
        top->object.emplace_back(pending_key, std::move(v));
        return &top->object.back().second;
    }

    bool null() { return place(JValue{}), true; }
    bool boolean(bool b) {
        JValue v;
        v.kind = JValue::Kind::Bool;
        v.boolean = b;
        place(std::move(v));
        return true;
    }
    bool number_integer(std::int64_t i) {
        return place(JValue::of(Int(static_cast<long>(i)))), true;
    }
    bool number_unsigned(std::uint64_t u) {
        return place(JValue::of(Int(static_cast<unsigned long>(u)))), true;
    }
    bool number_float(double, const std::string& s) {
        if (!integer_token(s)) throw SchemaError("/", "non-integer number " + s);
        place(JValue::of(Int(s)));
        return true;
    }
    bool string(std::string& s) { return place(JValue::of(s)), true; }
    bool binary(nlohmann::json::binary_t&) { return false; }
    bool start_object(std::size_t) {
        stack.push_back(place(JValue::obj()));
        return true;
    }
    bool key(std::string& s) { return pending_key = s, true; }
    bool end_object() { return stack.pop_back(), true; }
    bool start_array(std::size_t) {
        stack.push_back(place(JValue::arr()));
        return true;
    }
    bool end_array() { return stack.pop_back(), true; }
    bool parse_error(std::size_t pos, const std::string&,
                     const nlohmann::detail::exception& e) {
        throw SchemaError("/", "invalid JSON near byte " + std::to_string(pos) + ": " +
                                   e.what());
    }
};

void emit_rec(const JValue& v, std::string& out) {
    switch (v.kind) {
        case JValue::Kind::Null:
            out += "null";
            break;
        case JValue::Kind::Bool:
            out += v.boolean ? "true" : "false";
            break;
        case JValue::Kind::Int:
            out += v.integer.get_str();
            break;
        case JValue::Kind::String: {
            out += '"';
            for (char c : v.string) {
                switch (c) {
                    case '"': out += "\\\""; break;
                    case '\\': out += "\\\\"; break;
                    case '\n': out += "\\n"; break;
                    case '\t': out += "\\t"; break;
                    case '\r': out += "\\r"; break;
                    default:
                        if (static_cast<unsigned char>(c) < 0x20) {
                            char buf[8];
                            std::snprintf(buf, sizeof buf, "\\u%04x", c);
                            out += buf;
                        } else {
                            out += c;
                        }
                }
            }
            out += '"';
            break;
        }
        case JValue::Kind::Array: {
            out += '[';
            for (size_t i = 0; i < v.array.size(); ++i) {
                if (i) out += ',';
                emit_rec(v.array[i], out);
            }
            out += ']';
            break;
        }
        case JValue::Kind::Object: {
            std::vector<const std::pair<std::string, JValue>*> items;
            for (auto& kv : v.object) items.push_back(&kv);
            std::sort(items.begin(), items.end(),
                      [](auto* a, auto* b) { return a->first < b->first; });
            out += '{';
            for (size_t i = 0; i < items.size(); ++i) {
                if (i) out += ',';
                emit_rec(JValue::of(items[i]->first), out);
                out += ':';
                emit_rec(items[i]->second, out);
            }
            out += '}';
            break;
        }
    }
}

const JValue& need(const JValue& v, const std::string& key, const std::string& path) {
    if (v.kind != JValue::Kind::Object) throw SchemaError(path, "expected an object");
    const JValue* p = v.get(key);
    if (!p) throw SchemaError(path + "/" + key, "missing key");
    return *p;
}

Int need_int(const JValue& v, const std::string& path) {
    if (v.kind != JValue::Kind::Int) throw SchemaError(path, "expected an integer");
    return v.integer;
}

long need_small(const JValue& v, const std::string& path) {
    Int i = need_int(v, path);
    if (!i.fits_slong_p()) throw SchemaError(path, "index out of range");
    return i.get_si();
}

std::string need_string(const JValue& v, const std::string& path) {
    if (v.kind != JValue::Kind::String) throw SchemaError(path, "expected a string");
    return v.string;
}

Coefficients parse_coefficients(const JValue& doc, const std::string& path) {
    std::string s = need_string(need(doc, "coefficients", path), path + "/coefficients");
    if (s == "Z") return Coefficients::integers();
    if (s.size() > 1 && s[0] == 'F' && integer_token(s.substr(1))) {
        try {
            return Coefficients::prime_field(Int(s.substr(1)));
        } catch (const Error&) {
            throw SchemaError(path + "/coefficients", "not a prime modulus: " + s);
        }
    }
    throw SchemaError(path + "/coefficients", "unknown coefficient ring " + s);
}

int parse_degree_key(const std::string& key, const std::string& path) {
    if (!integer_token(key)) throw SchemaError(path + "/" + key, "expected an integer key");
    Int i(key);
    if (!i.fits_sint_p()) throw SchemaError(path + "/" + key, "degree out of range");
    return static_cast<int>(i.get_si());
}

Mat parse_matrix(const JValue& v, long rows, long cols, const Coefficients& k,
                 const std::string& path) {
    if (v.kind != JValue::Kind::Array) throw SchemaError(path, "expected a matrix");
    if (static_cast<long>(v.array.size()) != rows)
        throw SchemaError(path, "expected " + std::to_string(rows) + " rows");
    Mat m(rows, cols);
    for (long i = 0; i < rows; ++i) {
        const JValue& row = v.array[i];
        std::string rpath = path + "/" + std::to_string(i);
        if (row.kind != JValue::Kind::Array ||
            static_cast<long>(row.array.size()) != cols)
            throw SchemaError(rpath, "expected " + std::to_string(cols) + " entries");
        for (long j = 0; j < cols; ++j)
            m(i, j) = need_int(row.array[j], rpath + "/" + std::to_string(j));
    }
    return reduce(m, k);
}

JValue emit_matrix(const Mat& m) {
    JValue rows = JValue::arr();
    for (long i = 0; i < m.rows(); ++i) {
        JValue row = JValue::arr();
        for (long j = 0; j < m.cols(); ++j) row.array.push_back(JValue::of(Int(m(i, j))));
        rows.array.push_back(std::move(row));
    }
    return rows;
}

ChainComplex parse_complex_body(const JValue& v, const Coefficients& k,
                                const std::string& path) {
    const JValue& deg = need(v, "degrees", path);
    if (deg.kind != JValue::Kind::Object)
        throw SchemaError(path + "/degrees", "expected an object");
    std::map<int, long> ranks;
    for (auto& [key, val] : deg.object) {
        int n = parse_degree_key(key, path + "/degrees");
        long r = need_small(val, path + "/degrees/" + key);
        if (r < 0) throw SchemaError(path + "/degrees/" + key, "negative rank");
        if (r > 0) ranks[n] = r;
    }
    std::map<int, Mat> diffs;
    const JValue* dv = v.get("differentials");
    if (dv) {
        if (dv->kind != JValue::Kind::Object)
            throw SchemaError(path + "/differentials", "expected an object");
        for (auto& [key, val] : dv->object) {
            int n = parse_degree_key(key, path + "/differentials");
            long rows = ranks.count(n - 1) ? ranks[n - 1] : 0;
            long cols = ranks.count(n) ? ranks[n] : 0;
            diffs[n] = parse_matrix(val, rows, cols, k, path + "/differentials/" + key);
        }
    }
    for (auto& [n, r] : ranks)
        if (ranks.count(n - 1) && !diffs.count(n))
            throw SchemaError(path + "/differentials/" + std::to_string(n),
                              "missing differential between adjacent nonzero degrees");
    return ChainComplex(k, ranks, diffs);
}

JValue emit_complex_body(const ChainComplex& c) {
    JValue v = JValue::obj();
    JValue deg = JValue::obj();
    for (auto& [n, r] : c.ranks()) deg.set(std::to_string(n), JValue::of(Int(r)));
    v.set("degrees", std::move(deg));
    JValue dif = JValue::obj();
    for (auto& [n, r] : c.ranks())
        if (c.rank(n - 1) > 0) dif.set(std::to_string(n), emit_matrix(c.diff(n)));
    v.set("differentials", std::move(dif));
    return v;
}

std::map<int, Mat> parse_components(const JValue& v, const ChainComplex& src,
                                    const ChainComplex& tgt, const std::string& path) {
    if (v.kind != JValue::Kind::Object) throw SchemaError(path, "expected an object");
    std::map<int, Mat> comps;
    for (auto& [key, val] : v.object) {
        int n = parse_degree_key(key, path);
        Mat m = parse_matrix(val, tgt.rank(n), src.rank(n), src.coefficients(),
                             path + "/" + key);
        if (!is_zero(m)) comps[n] = m;
    }
    return comps;
}

JValue emit_components(const ChainMap& f) {
    JValue v = JValue::obj();
    for (auto& [n, m] : f.comps) v.set(std::to_string(n), emit_matrix(m));
    return v;
}

std::string coeff_tag(const Coefficients& k) {
    return k.is_field() ? "F" + k.p.get_str() : "Z";
}

}  // namespace

JValue json_parse(const std::string& text) {
    Builder b;
    nlohmann::json::sax_parse(text, &b);
    if (!b.has_root) throw SchemaError("/", "empty document");
    return b.root;
}

std::string json_emit(const JValue& v) {
    std::string out;
    emit_rec(v, out);
    return out;
}

Document parse_document(const std::string& text) {
    JValue v = json_parse(text);
    if (v.kind != JValue::Kind::Object) throw SchemaError("/", "expected an object");
    std::string type = need_string(need(v, "type", ""), "/type");
    Coefficients k = parse_coefficients(v, "");
    Document d;
    if (type == "complex") {
        d.kind = Document::Kind::Complex;
        d.complex = parse_complex_body(v, k, "");
    } else if (type == "module") {
        d.kind = Document::Kind::Module;
        long fr = need_small(need(v, "free_rank", ""), "/free_rank");
        if (fr < 0) throw SchemaError("/free_rank", "negative rank");
        std::vector<Int> tors;
        const JValue& tv = need(v, "torsion", "");
        if (tv.kind != JValue::Kind::Array) throw SchemaError("/torsion", "expected an array");
        for (size_t i = 0; i < tv.array.size(); ++i) {
            Int t = need_int(tv.array[i], "/torsion/" + std::to_string(i));
            if (t < 2) throw SchemaError("/torsion/" + std::to_string(i),
                                         "torsion factors must exceed 1");
            tors.push_back(t);
        }
        d.module = module_from_cyclics(k, fr, tors);
    } else if (type == "map") {
        d.kind = Document::Kind::Map;
        ChainComplex src = parse_complex_body(need(v, "source", ""), k, "/source");
        ChainComplex tgt = parse_complex_body(need(v, "target", ""), k, "/target");
        auto comps = parse_components(need(v, "components", ""), src, tgt, "/components");
        d.map = ChainMap{std::move(src), std::move(tgt), std::move(comps)};
        validate(d.map);
    } else if (type == "filtered") {
        d.kind = Document::Kind::Filtered;
        const JValue& sv = need(v, "steps", "");
        if (sv.kind != JValue::Kind::Array || sv.array.empty())
            throw SchemaError("/steps", "expected a nonempty array");
        for (size_t i = 0; i < sv.array.size(); ++i)
            d.filtered.steps.push_back(
                parse_complex_body(sv.array[i], k, "/steps/" + std::to_string(i)));
        const JValue& iv = need(v, "inclusions", "");
        if (iv.kind != JValue::Kind::Array ||
            iv.array.size() + 1 != sv.array.size())
            throw SchemaError("/inclusions", "expected one inclusion per consecutive pair");
        for (size_t i = 0; i < iv.array.size(); ++i) {
            auto comps = parse_components(iv.array[i], d.filtered.steps[i],
                                          d.filtered.steps[i + 1],
                                          "/inclusions/" + std::to_string(i));
            d.filtered.incls.push_back(ChainMap{d.filtered.steps[i],
                                                d.filtered.steps[i + 1], std::move(comps)});
        }
        validate(d.filtered);
    } else if (type == "simplicial") {
        d.kind = Document::Kind::Simplicial;
        d.simplicial.coeff = k;
        long bound = need_small(need(v, "bound", ""), "/bound");
        if (bound < 0) throw SchemaError("/bound", "negative bound");
        d.simplicial.bound = static_cast<int>(bound);
        const JValue& lv = need(v, "levels", "");
        if (lv.kind != JValue::Kind::Object)
            throw SchemaError("/levels", "expected an object");
        for (auto& [key, val] : lv.object) {
            int n = parse_degree_key(key, "/levels");
            long r = need_small(val, "/levels/" + key);
            if (r < 0) throw SchemaError("/levels/" + key, "negative rank");
            if (r > 0) d.simplicial.levels[n] = r;
        }
        auto parse_ops = [&](const char* name, bool face) {
            const JValue* ov = v.get(name);
            if (!ov) return;
            std::string base = std::string("/") + name;
            if (ov->kind != JValue::Kind::Object)
                throw SchemaError(base, "expected an object");
            for (auto& [key, val] : ov->object) {
                auto comma = key.find(',');
                if (comma == std::string::npos || !integer_token(key.substr(0, comma)) ||
                    !integer_token(key.substr(comma + 1)))
                    throw SchemaError(base + "/" + key, "expected a key of the form n,i");
                int n = static_cast<int>(Int(key.substr(0, comma)).get_si());
                int i = static_cast<int>(Int(key.substr(comma + 1)).get_si());
                long rows = d.simplicial.level(face ? n - 1 : n + 1);
                long cols = d.simplicial.level(n);
                Mat m = parse_matrix(val, rows, cols, k, base + "/" + key);
                if (face)
                    d.simplicial.faces[{n, i}] = m;
                else
                    d.simplicial.degeneracies[{n, i}] = m;
            }
        };
        parse_ops("faces", true);
        parse_ops("degeneracies", false);
        validate(d.simplicial);
    } else {
        throw SchemaError("/type", "unknown document type " + type);
    }
    return d;
}

std::string emit_document(const Document& d) {
    JValue v = JValue::obj();
    switch (d.kind) {
        case Document::Kind::Complex: {
            v = emit_complex_body(d.complex);
            v.set("type", JValue::of(std::string("complex")));
            v.set("coefficients", JValue::of(coeff_tag(d.complex.coefficients())));
            break;
        }
        case Document::Kind::Module: {
            v.set("type", JValue::of(std::string("module")));
            v.set("coefficients", JValue::of(coeff_tag(d.module.coeff)));
            v.set("free_rank", JValue::of(Int(d.module.free_rank)));
            JValue tors = JValue::arr();
            for (auto& t : d.module.torsion) tors.array.push_back(JValue::of(t));
            v.set("torsion", std::move(tors));
            break;
        }
        case Document::Kind::Map: {
            v.set("type", JValue::of(std::string("map")));
            v.set("coefficients", JValue::of(coeff_tag(d.map.source.coefficients())));
            v.set("source", emit_complex_body(d.map.source));
            v.set("target", emit_complex_body(d.map.target));
            v.set("components", emit_components(d.map));
            break;
        }
        case Document::Kind::Filtered: {
            v.set("type", JValue::of(std::string("filtered")));
            v.set("coefficients",
                  JValue::of(coeff_tag(d.filtered.total().coefficients())));
            JValue steps = JValue::arr();
            for (auto& s : d.filtered.steps) steps.array.push_back(emit_complex_body(s));
            v.set("steps", std::move(steps));
            JValue incls = JValue::arr();
            for (auto& f : d.filtered.incls) incls.array.push_back(emit_components(f));
            v.set("inclusions", std::move(incls));
            break;
        }
        case Document::Kind::Simplicial: {
            v.set("type", JValue::of(std::string("simplicial")));
            v.set("coefficients", JValue::of(coeff_tag(d.simplicial.coeff)));
            v.set("bound", JValue::of(Int(d.simplicial.bound)));
            JValue lv = JValue::obj();
            for (auto& [n, r] : d.simplicial.levels)
                lv.set(std::to_string(n), JValue::of(Int(r)));
            v.set("levels", std::move(lv));
            JValue fv = JValue::obj(), dv = JValue::obj();
            for (auto& [key, m] : d.simplicial.faces)
                fv.set(std::to_string(key.first) + "," + std::to_string(key.second),
                       emit_matrix(m));
            for (auto& [key, m] : d.simplicial.degeneracies)
                dv.set(std::to_string(key.first) + "," + std::to_string(key.second),
                       emit_matrix(m));
            v.set("faces", std::move(fv));
            v.set("degeneracies", std::move(dv));
            break;
        }
    }
    return json_emit(v);
}

Document complex_document(const ChainComplex& c) {
    Document d;
    d.kind = Document::Kind::Complex;
    d.complex = c;
    return d;
}

Document module_document(const FgModule& m) {
    Document d;
    d.kind = Document::Kind::Module;
    d.module = m;
    return d;
}

Document map_document(const ChainMap& f) {
    Document d;
    d.kind = Document::Kind::Map;
    d.map = f;
    return d;
}

Document filtered_document(const FilteredComplex& f) {
    Document d;
    d.kind = Document::Kind::Filtered;
    d.filtered = f;
    return d;
}

Document simplicial_document(const SimplicialModule& m) {
    Document d;
    d.kind = Document::Kind::Simplicial;
    d.simplicial = m;
    return d;
}

}  // namespace homalg
