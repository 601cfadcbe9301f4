#pragma once

#include <stdexcept>
#include <string>

namespace sqconf {

// Malformed input or violated precondition; the CLI maps it to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured resource cap was hit; exit code 3.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class GeomErrc {
    diameter_exceeded,
    distance_out_of_range,
    no_boundary,
    undefined_theta,
    not_in_sf,
    not_applicable,
    not_a_square_configuration,
    outside_domain,
};

const char* to_string(GeomErrc code);

class GeometryError : public std::runtime_error {
public:
    GeometryError(GeomErrc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    GeomErrc code() const { return code_; }

private:
    GeomErrc code_;
};

}  // namespace sqconf
