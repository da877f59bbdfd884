#pragma once

#include <stdexcept>
#include <string>

namespace wulff {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// geometry
struct InvalidPolytope : Error {
    using Error::Error;
};
struct NoBoundingFacet : Error {
    using Error::Error;
};
struct Unbounded : Error {
    using Error::Error;
};

// quadrature
struct UnsupportedDimension : Error {
    using Error::Error;
};
struct DegenerateVertex : Error {
    using Error::Error;
};

// density
struct TailNotIntegrable : Error {
    using Error::Error;
};
struct ToleranceNotMet : Error {
    using Error::Error;
};

// solver
struct NonPositiveSupport : Error {
    using Error::Error;
};
struct MeasureConcentrated : Error {
    using Error::Error;
};
struct BisectionBracketFailure : Error {
    using Error::Error;
};
struct NonIntegrableDensity : Error {
    using Error::Error;
};

// io
struct ParseError : Error {
    using Error::Error;
};

}  // namespace wulff
