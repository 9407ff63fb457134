#ifndef HOMALG_IO_HPP
#define HOMALG_IO_HPP

#include <memory>
#include <string>
#include <vector>

#include "homalg/doldkan.hpp"

namespace homalg {

// JSON value with arbitrary-precision integers; the only number kind the file
// formats use.
struct JValue {
    enum class Kind { Null, Bool, Int, String, Array, Object };
    Kind kind = Kind::Null;
    bool boolean = false;
    Int integer = 0;
    std::string string;
    std::vector<JValue> array;
    std::vector<std::pair<std::string, JValue>> object;  // insertion order

    static JValue of(Int v) {
        JValue j;
        j.kind = Kind::Int;
        j.integer = std::move(v);
        return j;
    }
    static JValue of(const std::string& v) {
        JValue j;
        j.kind = Kind::String;
        j.string = v;
        return j;
    }
    static JValue arr() {
        JValue j;
        j.kind = Kind::Array;
        return j;
    }
    static JValue obj() {
        JValue j;
        j.kind = Kind::Object;
        return j;
    }
    void set(const std::string& key, JValue v) { object.emplace_back(key, std::move(v)); }
    const JValue* get(const std::string& key) const;
};

JValue json_parse(const std::string& text);  // SchemaError at "/" on bad JSON

// Canonical form: object keys sorted, no whitespace, integers as unquoted
// decimal.
std::string json_emit(const JValue& v);

struct Document {
    enum class Kind { Complex, Module, Map, Filtered, Simplicial };
    Kind kind = Kind::Complex;
    ChainComplex complex;
    FgModule module{Coefficients::integers(), 0, {}};
    ChainMap map;
    FilteredComplex filtered;
    SimplicialModule simplicial;
};

Document parse_document(const std::string& text);  // SchemaError with path
std::string emit_document(const Document& d);      // canonical bytes

Document complex_document(const ChainComplex& c);
Document module_document(const FgModule& m);
Document map_document(const ChainMap& f);
Document filtered_document(const FilteredComplex& f);
Document simplicial_document(const SimplicialModule& m);

}  // namespace homalg

#endif
