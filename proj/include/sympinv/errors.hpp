#pragma once

#include <stdexcept>
#include <string>

namespace sympinv {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroConstantTerm : Error {
    ZeroConstantTerm() : Error("polynomial has zero constant term") {}
};
struct NotMonic : Error {
    NotMonic() : Error("polynomial is not monic") {}
};
struct NotFound : Error {
    explicit NotFound(const std::string& what = "search found no result") : Error(what) {}
};
struct Singular : Error {
    Singular() : Error("matrix is singular") {}
};
struct Inconsistent : Error {
    Inconsistent() : Error("linear system has no solution") {}
};
struct DimensionMismatch : Error {
    DimensionMismatch() : Error("dimension mismatch") {}
};
struct ModulusMismatch : Error {
    ModulusMismatch() : Error("operands live over different prime fields") {}
};
struct ZeroVector : Error {
    ZeroVector() : Error("zero vector not allowed") {}
};
struct TooLarge : Error {
    explicit TooLarge(const std::string& what = "group order exceeds enumeration cap") : Error(what) {}
};
struct NotLagrangian : Error {
    NotLagrangian() : Error("subspace is not a Lagrangian") {}
};
struct NotSymmetric : Error {
    NotSymmetric() : Error("matrix is not symmetric") {}
};
struct InvalidProblem : Error {
    explicit InvalidProblem(const std::string& clause) : Error("invalid pullback problem: " + clause) {}
};
struct InvalidPolynomial : Error {
    explicit InvalidPolynomial(const std::string& what) : Error(what) {}
};
struct InvalidScalar : Error {
    explicit InvalidScalar(const std::string& what) : Error(what) {}
};
struct PreconditionViolated : Error {
    explicit PreconditionViolated(const std::string& what) : Error(what) {}
};
struct SearchExhausted : Error {
    explicit SearchExhausted(const std::string& what = "search budget exceeded") : Error(what) {}
};
struct Unrealizable : Error {
    explicit Unrealizable(const std::string& what) : Error(what) {}
};
struct UnknownName : Error {
    explicit UnknownName(const std::string& name) : Error("unknown fixture name: " + name) {}
};
struct WrongField : Error {
    explicit WrongField(const std::string& what) : Error(what) {}
};
struct Exceeds : Error {
    explicit Exceeds(int max_k) : Error("no decomposition of length <= " + std::to_string(max_k)) {}
};

} // namespace sympinv
