// Copyright 2026 pontdm contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "pontdm/rwta.hpp"

namespace pontdm {

// Comma-separated table format: header `src,dst,wavelength,timeslot`, one
// record per line, rows sorted by (src, dst, wavelength) on output.
// Round-trip stable: parse(emit(table)) == table.
void write_table(std::ostream& out, const AssignmentTable& table);
AssignmentTable parse_table(std::istream& in, const std::string& filename);

void save_table(const std::string& path, const AssignmentTable& table);
AssignmentTable load_table(const std::string& path);

}  // namespace pontdm
