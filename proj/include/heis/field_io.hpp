#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "heis/grid.hpp"

namespace heis {

// Binary container, all integers and doubles little-endian:
//   8 bytes  magic "HEISFLD\0"
//   u32      format version (1)
//   u32      value kind (0 = real, 1 = complex)
//   u32      dimension d
//   d times: f64 lower, f64 upper, u64 count
//   values, row-major (last axis fastest); complex values as (re, im) pairs.
inline constexpr std::uint32_t kFieldFormatVersion = 1;

void write_field(std::ostream& os, const ScalarField& f);
void write_field(std::ostream& os, const RealField& f);
void write_field(const std::string& path, const ScalarField& f);
void write_field(const std::string& path, const RealField& f);

// Reads either kind; real data is promoted to complex.
ScalarField read_field(std::istream& is);
ScalarField read_field(const std::string& path);
RealField read_real_field(std::istream& is);

}  // namespace heis
