// OKAS-FIELD v1 text format:
//
//   OKAS-FIELD v1 d=<d> n=<n_cells>
//   <n_cells^d whitespace-separated values, row-major, 17 significant digits>
#pragma once

#include <filesystem>
#include <iosfwd>

#include "okas/grid.hpp"

namespace okas {

void write_field(std::ostream& out, const ScalarField& field);
ScalarField read_field(std::istream& in);

void write_field(const std::filesystem::path& path, const ScalarField& field);
ScalarField read_field(const std::filesystem::path& path);

}  // namespace okas
