#ifndef DLAMBDA_ERROR_HPP
#define DLAMBDA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dlambda {

/// Parameters or inputs outside an operation's domain.
class InvalidArgument : public std::invalid_argument
{
public:
    explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

/// A phase was requested at a point where the field vanishes.
class ZeroFieldError : public std::domain_error
{
public:
    explicit ZeroFieldError(const std::string& what) : std::domain_error(what) {}
};

/// A constrained design problem has no admissible solution for the inputs.
class NoSolution : public std::domain_error
{
public:
    explicit NoSolution(const std::string& what) : std::domain_error(what) {}
};

/// The time-domain integrator left its physical bounds.
class NumericalFailure : public std::runtime_error
{
public:
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dlambda

#endif
