#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

#include "vec.hpp"

namespace stokes {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A surface map was evaluated outside its padded parameter domain.
class DomainError : public Error {
public:
    DomainError(const std::string& what, Vec2 point)
        : Error(describe(what, point))
        , point_(point)
    {
    }
    Vec2 point() const { return point_; }

private:
    static std::string describe(const std::string& what, Vec2 p)
    {
        std::ostringstream os;
        os.precision(17);
        os << what << " at parameter point " << p;
        return os.str();
    }
    Vec2 point_;
};

/// A vector field was evaluated where its guard predicate is false.
class FieldDomainError : public Error {
public:
    explicit FieldDomainError(Vec3 point)
        : Error(describe(point))
        , point_(point)
    {
    }
    Vec3 point() const { return point_; }

private:
    static std::string describe(Vec3 p)
    {
        std::ostringstream os;
        os.precision(17);
        os << "vector field undefined at " << p;
        return os.str();
    }
    Vec3 point_;
};

/// Invalid construction parameter (delta out of range, bad quadrature order, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// An integrand produced a non-finite value.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, double location)
        : Error(what + " at " + format(location))
    {
    }
    EvaluationError(const std::string& what, Vec2 location)
        : Error(what + " at " + format(location))
    {
    }

private:
    template <typename T>
    static std::string format(const T& x)
    {
        std::ostringstream os;
        os.precision(17);
        os << x;
        return os.str();
    }
};

} // namespace stokes
