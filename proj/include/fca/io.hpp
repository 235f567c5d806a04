#pragma once

#include <string>
#include <vector>

#include "fca/percolation.hpp"
#include "fca/rules.hpp"
#include "fca/tm.hpp"
#include "fca/window.hpp"

namespace fca {

// PBM snapshots for binary windows: P1 (ascii) and P4 (packed). Row 0 of the
// file is the top window row.
std::string to_pbm(const Window& w, bool binary_format);
Window from_pbm(const std::string& data);
void write_file(const std::string& path, const std::string& data);
std::string read_file(const std::string& path);

// {"neighbor_sets": [[[dx,dy],...], ...]}
NeighborFamily family_from_json(const std::string& json_text);
std::string family_to_json(const NeighborFamily& e);

// {"states": [...], "blank": "_", "transitions": [{state, read, write, move, next}],
//  "initial": ..., "halt": ..., optional "tape_alphabet"}
TMSpec tm_from_json(const std::string& json_text);

// Multi-state grids: {"width", "height", "alphabet": [names], "rows": [[...], ...]}
// with the top row first; cells are alphabet indices.
std::string state_grid_to_json(const Window& w, const std::vector<std::string>& names);
Window state_grid_from_json(const std::string& json_text);

std::string scan_to_csv(const ScanResult& r);

}  // namespace fca
