// File reading and writing: CSV fields, density snapshots, manifests.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/grid.hpp"

namespace mfc {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Reads a dense ny-row by nx-column comma-separated field matching the grid.
// Row j of the file holds the cells with y-index j, left to right.
ScalarField read_field_csv(const std::string& path, const Grid2D& grid);

// Writes "x,y,value" lines for free cells in row-major order. Coordinates are
// cell centers in domain units.
void write_snapshot(const std::string& path, const ScalarField& field);

// Writes "key=value" lines in the order given.
void write_key_values(const std::string& path,
                      const std::vector<std::pair<std::string, std::string>>& items);

std::string join_doubles(const std::vector<double>& values);

}  // namespace mfc
