#pragma once

#include <stdexcept>
#include <string>

namespace opalg {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyBlockList : Error {
    EmptyBlockList() : Error("algebra needs at least one matrix block") {}
};

struct NonPositiveBlockDim : Error {
    explicit NonPositiveBlockDim(const std::string& what) : Error(what) {}
};

struct AlgebraMismatch : Error {
    explicit AlgebraMismatch(const std::string& what) : Error(what) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& what) : Error(what) {}
};

struct NotHermitian : Error {
    explicit NotHermitian(const std::string& what) : Error(what) {}
};

struct MultiBlockUnsupported : Error {
    explicit MultiBlockUnsupported(const std::string& what) : Error(what) {}
};

struct NotCompletelyPositive : Error {
    NotCompletelyPositive(const std::string& what, double min_eig)
        : Error(what), min_eigenvalue(min_eig) {}
    double min_eigenvalue;
};

struct NotPositiveFunctional : Error {
    explicit NotPositiveFunctional(const std::string& what) : Error(what) {}
};

struct NotConeHomomorphism : Error {
    NotConeHomomorphism(const std::string& violated_law, const std::string& what)
        : Error(what), law(violated_law) {}
    std::string law;
};

struct NotJFixed : Error {
    explicit NotJFixed(const std::string& what) : Error(what) {}
};

struct TruncationTooSmall : Error {
    explicit TruncationTooSmall(const std::string& what) : Error(what) {}
};

struct NotNatural : Error {
    NotNatural(const std::string& what, double res) : Error(what), residual(res) {}
    double residual;
};

struct ReconstructionMismatch : Error {
    ReconstructionMismatch(const std::string& what, double res) : Error(what), residual(res) {}
    double residual;
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace opalg
