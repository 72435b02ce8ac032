#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "robustcut/dataset.hpp"
#include "robustcut/grid.hpp"
#include "robustcut/mask.hpp"

namespace robustcut {

template <class T>
struct Loaded {
    T value;
    std::vector<std::string> warnings;
};

/// Header-free CSV rows "x1,...,xd,label[,mass]". The mass column is either
/// present on every row or on none (uniform 1/N). Masses that do not sum to
/// 1 within 1e-9 are renormalised and a warning is recorded.
Loaded<EmpiricalDataset> parse_dataset(std::istream& in);
Loaded<EmpiricalDataset> load_dataset(const std::filesystem::path& path);
void write_dataset(std::ostream& out, const EmpiricalDataset& ds);

/// Text grid format:
///
///     # comment
///     dims 32 32
///     spacing 0.0625 0.0625
///     origin -1 -1
///     dens0
///     <cell_count reals, row-major, any whitespace>
///     dens1
///     <cell_count reals>
///
/// `spacing` and `origin` are optional (defaults 1 and 0).
Loaded<GridMeasure> parse_grid(std::istream& in);
Loaded<GridMeasure> load_grid(const std::filesystem::path& path);
void write_grid(std::ostream& out, const GridMeasure& gm);

/// d = 2 variant: two CSV matrices (rows = axis 0) for dens0 and dens1.
Loaded<GridMeasure> load_grid_csv_pair(const std::filesystem::path& dens0_csv,
                                       const std::filesystem::path& dens1_csv,
                                       std::vector<double> spacing = {},
                                       std::vector<double> origin = {});

/// Masks as plain PBM (P1). Width = last axis, height = product of the
/// other axes; row r of the bitmap is the r-th run of the last axis in
/// row-major order, so the first bitmap row holds cells with index 0 on
/// every other axis. '1' = cell in A.
void write_mask_pbm(std::ostream& out, const CellMask& mask);
/// Same layout as comma-separated 0/1 rows.
void write_mask_csv(std::ostream& out, const CellMask& mask);
/// Reads P1 or 0/1 CSV (autodetected) into the given geometry.
CellMask read_mask(std::istream& in, const GridGeometry& geometry);
CellMask load_mask(const std::filesystem::path& path, const GridGeometry& geometry);

}  // namespace robustcut
