#ifndef KVV_ERROR_HPP
#define KVV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace kvv {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// qla
class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("singular matrix") {}
};

class NotSymmetric : public Error {
public:
    NotSymmetric() : Error("matrix is not symmetric") {}
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// lattice
class UnknownCurve : public Error {
public:
    explicit UnknownCurve(const std::string& name)
        : Error("unknown curve '" + name + "'"), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class DuplicateCurve : public Error {
public:
    explicit DuplicateCurve(const std::string& name)
        : Error("curve '" + name + "' is already registered") {}
};

class NonPrimeTerm : public Error {
public:
    explicit NonPrimeTerm(const std::string& name)
        : Error("divisor term '" + name + "' is not a prime curve") {}
};

class NonIntegralDivisor : public Error {
public:
    NonIntegralDivisor() : Error("divisor has non-integral coefficients") {}
};

// contraction
class NotContractible : public Error {
public:
    using Error::Error;
};

class RankNotOne : public Error {
public:
    explicit RankNotOne(long rank)
        : Error("target Picard rank is " + std::to_string(rank) + ", expected 1") {}
};

class NotStrictTransform : public Error {
public:
    explicit NotStrictTransform(const std::string& name)
        : Error("divisor has a nonzero coefficient on contracted curve '" + name + "'") {}
};

// pencil
class CoincidentPoints : public Error {
public:
    CoincidentPoints() : Error("points coincide") {}
};

class BadCharacteristic : public Error {
public:
    using Error::Error;
};

class PointNotOnCurve : public Error {
public:
    PointNotOnCurve() : Error("point does not lie on the curve") {}
};

class MultiplicityBoundExceeded : public Error {
public:
    explicit MultiplicityBoundExceeded(int bound)
        : Error("local intersection multiplicity did not stabilise below degree " +
                std::to_string(bound)) {}
};

// scenario
class ParseError : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

/// Raised when a computed result violates an invariant that must hold by construction.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace kvv

#endif // KVV_ERROR_HPP
