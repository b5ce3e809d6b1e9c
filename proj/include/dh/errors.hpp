// Error types shared across the library.

#ifndef DH_ERRORS_HPP
#define DH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dh {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input-format violations.
struct ParseError : Error {
    using Error::Error;
};

// Coxeter matrix fails symmetry / diagonal / entry-range checks.
struct InvalidMatrix : Error {
    using Error::Error;
};

struct NotSpherical : Error {
    using Error::Error;
};

// A configured cap (memo table, cell count, chamber count) was exceeded.
struct ResourceLimit : Error {
    using Error::Error;
};

struct SimplexNotFound : Error {
    using Error::Error;
};

struct LabelCollision : Error {
    using Error::Error;
};

struct RelationViolation : Error {
    using Error::Error;
};

struct UnsupportedRecipe : Error {
    using Error::Error;
};

struct PanelNotActive : Error {
    using Error::Error;
};

struct TidyViolation : Error {
    using Error::Error;
};

struct NotAComponent : Error {
    using Error::Error;
};

struct NotFlag : Error {
    using Error::Error;
};

struct NotClosedBoundary : Error {
    using Error::Error;
};

} // namespace dh

#endif
