#pragma once

#include <iosfwd>
#include <string>

#include "sqconf/cube_complex.hpp"

namespace sqconf {

// "scomplex v1": header `scomplex 1`, then `c <id> <dim> [label]` for every
// cell in id order, then `b <id> <face_id> <+1|-1>` sorted by (id, face_id).
void write_scomplex(std::ostream& out, const CubeComplex& cx);
std::string to_scomplex(const CubeComplex& cx);

CubeComplex read_scomplex(std::istream& in, ComplexMetadata meta = {});
CubeComplex parse_scomplex(const std::string& text, ComplexMetadata meta = {});

CubeComplex load_scomplex(const std::string& path, ComplexMetadata meta = {});
void save_scomplex(const std::string& path, const CubeComplex& cx);

}  // namespace sqconf
