#pragma once

#include <string>

#include "fftstencil/grid.hpp"

namespace fftstencil {

enum class GridFormat { Csv, Raw };

/// csv: one line per (cell, field), "i1,...,id,f,value" with shortest
/// round-trip decimals. raw: little-endian float64, row-major dims then
/// field, plus a "<path>.meta" sidecar holding dims / fields / dtype / order.
void write_grid(const FieldGrid& g, const std::string& path, GridFormat format);

/// Reads either format back; raw is detected by the presence of the sidecar.
/// Malformed input raises IoError naming the offending line or byte count.
FieldGrid read_grid(const std::string& path);

} // namespace fftstencil
