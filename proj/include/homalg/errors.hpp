#ifndef HOMALG_ERRORS_HPP
#define HOMALG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace homalg {

struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string& msg)
        : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

struct ShapeError : Error {
    explicit ShapeError(const std::string& msg) : Error("ShapeError", msg) {}
};
struct NotAComplex : Error {
    int degree;
    NotAComplex(int n, const std::string& msg) : Error("NotAComplex", msg), degree(n) {}
};
struct NotAChainMap : Error {
    explicit NotAChainMap(const std::string& msg) : Error("NotAChainMap", msg) {}
};
struct CoefficientMismatch : Error {
    explicit CoefficientMismatch(const std::string& msg) : Error("CoefficientMismatch", msg) {}
};
struct MembershipError : Error {
    explicit MembershipError(const std::string& msg) : Error("MembershipError", msg) {}
};
struct CompositionMismatch : Error {
    explicit CompositionMismatch(const std::string& msg) : Error("CompositionMismatch", msg) {}
};
struct IndexOrder : Error {
    explicit IndexOrder(const std::string& msg) : Error("IndexOrder", msg) {}
};
struct InconsistentPage : Error {
    explicit InconsistentPage(const std::string& msg) : Error("InconsistentPage", msg) {}
};
struct SimplicialIdentityViolation : Error {
    explicit SimplicialIdentityViolation(const std::string& msg)
        : Error("SimplicialIdentityViolation", msg) {}
};
struct NegativeSupport : Error {
    explicit NegativeSupport(const std::string& msg) : Error("NegativeSupport", msg) {}
};
struct GapNotConcentrated : Error {
    explicit GapNotConcentrated(const std::string& msg) : Error("GapNotConcentrated", msg) {}
};
struct TooLarge : Error {
    explicit TooLarge(const std::string& msg) : Error("TooLarge", msg) {}
};
struct SchemaError : Error {
    std::string path;
    SchemaError(std::string at, const std::string& msg)
        : Error("SchemaError", msg + " at " + at), path(std::move(at)) {}
};
struct NullWitnessError : Error {
    explicit NullWitnessError(const std::string& msg) : Error("NullWitnessError", msg) {}
};

}  // namespace homalg

#endif
