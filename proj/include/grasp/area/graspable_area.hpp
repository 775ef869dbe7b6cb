#pragma once

#include <algorithm>
#include <limits>
#include <utility>
#include <vector>

#include "grasp/core/types.hpp"
#include "grasp/segment/region_growing.hpp"

namespace grasp {

// Binary raster of a surface segment in its local plane coordinates at
// exactly 1 mm per cell. cell_to_point maps occupied cells to a source
// point index, or -1 for cells filled by morphological closing.
struct SurfaceMask {
  static constexpr double kCellSize = 0.001;

  int cols = 0;
  int rows = 0;
  std::vector<uint8_t> grid;
  std::vector<int> cell_to_point;
  Eigen::Vector2d origin = Eigen::Vector2d::Zero();  // local coords of cell (0,0)

  bool occupied(int r, int c) const { return grid[static_cast<size_t>(r) * cols + c] != 0; }
  size_t cell(int r, int c) const { return static_cast<size_t>(r) * cols + c; }
  int occupied_count() const {
    int n = 0;
    for (uint8_t g : grid) n += (g != 0);
    return n;
  }
};

// Vacuum cup footprint: 18x18 grid, diameter 18 cells (1 mm each). A cell
// belongs to the disc when its center lies within radius 9 of the grid
// center. The anchor cell for erosion/convolution is (9, 9).
struct CupMask {
  static constexpr int kSize = 18;
  static constexpr int kAnchor = 9;

  std::vector<uint8_t> grid;
  std::vector<Eigen::Vector2i> offsets;  // (dr, dc) relative to the anchor

  CupMask() {
    grid.assign(kSize * kSize, 0);
    for (int i = 0; i < kSize; ++i) {
      for (int j = 0; j < kSize; ++j) {
        double di = i - 8.5;
        double dj = j - 8.5;
        if (di * di + dj * dj <= 81.0) {
          grid[i * kSize + j] = 1;
          offsets.emplace_back(i - kAnchor, j - kAnchor);
        }
      }
    }
  }

  int disc_cell_count() const { return static_cast<int>(offsets.size()); }
};

// Graspable cup centers remapped to image pixels.
struct GraspableAreaMap {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> graspable;    // per pixel
  std::vector<int32_t> surface_id;   // -1 where not graspable
  std::vector<std::vector<Eigen::Vector2i>> surface_cells;  // per surface (row, col)

  GraspableAreaMap() = default;
  GraspableAreaMap(int w, int h)
      : width(w),
        height(h),
        graspable(static_cast<size_t>(w) * h, 0),
        surface_id(static_cast<size_t>(w) * h, -1) {}

  bool at(int row, int col) const { return graspable[static_cast<size_t>(row) * width + col] != 0; }
};

namespace detail {

// 3x3 square dilation followed by erosion; fills single-cell sampling
// holes. The mask carries a 1-cell border so dilation cannot clip.
inline void close3x3(std::vector<uint8_t>& grid, int rows, int cols) {
  std::vector<uint8_t> dilated(grid.size(), 0);
  auto idx = [cols](int r, int c) { return static_cast<size_t>(r) * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (!grid[idx(r, c)]) continue;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          int rr = r + dr, cc = c + dc;
          if (rr >= 0 && rr < rows && cc >= 0 && cc < cols) dilated[idx(rr, cc)] = 1;
        }
      }
    }
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      bool keep = true;
      for (int dr = -1; dr <= 1 && keep; ++dr) {
        for (int dc = -1; dc <= 1 && keep; ++dc) {
          int rr = r + dr, cc = c + dc;
          if (rr < 0 || rr >= rows || cc < 0 || cc >= cols || !dilated[idx(rr, cc)]) keep = false;
        }
      }
      grid[idx(r, c)] = keep ? 1 : 0;
    }
  }
}

}  // namespace detail

// Projects the segment's points onto its least-squares plane and rasterizes
// the in-plane coordinates at 1 mm. A 3x3 closing fills sampling holes;
// closed cells carry no source point.
inline SurfaceMask project_surface(const SurfaceSegment& segment, const PointCloud& cloud) {
  if (segment.point_indices.empty()) {
    throw std::invalid_argument("project_surface: empty segment");
  }

  PlaneFit plane;
  bool have_plane = true;
  try {
    plane = fit_plane(cloud.points, segment.point_indices);
  } catch (const DegenerateFitError&) {
    have_plane = false;  // single point or collinear sliver: project as-is
  }

  std::vector<Eigen::Vector2d> local;
  local.reserve(segment.point_indices.size());
  double min_a = std::numeric_limits<double>::infinity();
  double min_b = min_a;
  double max_a = -min_a, max_b = -min_a;
  for (int i : segment.point_indices) {
    Eigen::Vector3d p = cloud.points[i];
    if (have_plane) p -= plane.signed_distance(p) * plane.normal;
    Eigen::Vector3d f = segment.local_frame * (p - segment.centroid);
    local.emplace_back(f.x(), f.y());
    min_a = std::min(min_a, f.x());
    max_a = std::max(max_a, f.x());
    min_b = std::min(min_b, f.y());
    max_b = std::max(max_b, f.y());
  }

  const double cell = SurfaceMask::kCellSize;
  SurfaceMask mask;
  // 1-cell border so the closing has room
  mask.origin = Eigen::Vector2d(min_a - cell, min_b - cell);
  mask.cols = static_cast<int>(std::floor((max_a - mask.origin.x()) / cell)) + 2;
  mask.rows = static_cast<int>(std::floor((max_b - mask.origin.y()) / cell)) + 2;
  mask.grid.assign(static_cast<size_t>(mask.rows) * mask.cols, 0);
  mask.cell_to_point.assign(mask.grid.size(), -1);

  for (size_t k = 0; k < local.size(); ++k) {
    int c = static_cast<int>(std::floor((local[k].x() - mask.origin.x()) / cell));
    int r = static_cast<int>(std::floor((local[k].y() - mask.origin.y()) / cell));
    c = std::clamp(c, 0, mask.cols - 1);
    r = std::clamp(r, 0, mask.rows - 1);
    size_t id = mask.cell(r, c);
    mask.grid[id] = 1;
    if (mask.cell_to_point[id] < 0) mask.cell_to_point[id] = segment.point_indices[k];
  }

  detail::close3x3(mask.grid, mask.rows, mask.cols);
  return mask;
}

// Cells where the cup disc makes full contact: binary erosion of the
// surface mask by the disc (every disc cell centered at the result cell is
// occupied; exact integer semantics). Implemented with per-row prefix sums
// over the disc's row spans.
inline std::vector<Eigen::Vector2i> full_contact_area(const SurfaceMask& surface,
                                                      const CupMask& cup) {
  std::vector<Eigen::Vector2i> result;
  if (surface.rows == 0 || surface.cols == 0) return result;

  // disc row spans relative to the anchor
  int dr_min = cup.offsets.front().x(), dr_max = dr_min;
  std::vector<std::pair<int, int>> spans;  // indexed by dr - dr_min
  {
    for (const auto& off : cup.offsets) {
      dr_min = std::min(dr_min, off.x());
      dr_max = std::max(dr_max, off.x());
    }
    spans.assign(dr_max - dr_min + 1, {1, -1});
    for (const auto& off : cup.offsets) {
      auto& s = spans[off.x() - dr_min];
      if (s.first > s.second) {
        s = {off.y(), off.y()};
      } else {
        s.first = std::min(s.first, off.y());
        s.second = std::max(s.second, off.y());
      }
    }
  }

  // rowsum[r][c] = number of occupied cells in row r, columns [0, c)
  const int rows = surface.rows, cols = surface.cols;
  std::vector<int> rowsum(static_cast<size_t>(rows) * (cols + 1), 0);
  for (int r = 0; r < rows; ++r) {
    int* acc = &rowsum[static_cast<size_t>(r) * (cols + 1)];
    for (int c = 0; c < cols; ++c) acc[c + 1] = acc[c] + (surface.occupied(r, c) ? 1 : 0);
  }

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      bool full = true;
      for (int dr = dr_min; dr <= dr_max && full; ++dr) {
        const auto& span = spans[dr - dr_min];
        if (span.first > span.second) continue;
        int rr = r + dr;
        int c0 = c + span.first;
        int c1 = c + span.second;
        if (rr < 0 || rr >= rows || c0 < 0 || c1 >= cols) {
          full = false;
          break;
        }
        const int* acc = &rowsum[static_cast<size_t>(rr) * (cols + 1)];
        if (acc[c1 + 1] - acc[c0] != c1 - c0 + 1) full = false;
      }
      if (full) result.emplace_back(r, c);
    }
  }
  return result;
}

// Maps graspable cells of one surface back to image pixels through each
// cell's source point. Cells created by the closing (no source point) use
// the nearest occupied source cell.
inline void remap_to_image(const std::vector<Eigen::Vector2i>& cells, const SurfaceMask& mask,
                           const PointCloud& cloud, int surface_id, GraspableAreaMap& map) {
  if (!cloud.has_pixels()) {
    throw std::invalid_argument("remap_to_image: cloud lacks pixel indices");
  }
  if (surface_id >= static_cast<int>(map.surface_cells.size())) {
    map.surface_cells.resize(surface_id + 1);
  }

  // source cells for nearest-source lookup
  std::vector<Eigen::Vector2i> sources;
  for (int r = 0; r < mask.rows; ++r) {
    for (int c = 0; c < mask.cols; ++c) {
      if (mask.occupied(r, c) && mask.cell_to_point[mask.cell(r, c)] >= 0) {
        sources.emplace_back(r, c);
      }
    }
  }

  for (const auto& cell : cells) {
    int point_index = mask.cell_to_point[mask.cell(cell.x(), cell.y())];
    if (point_index < 0) {
      long best = std::numeric_limits<long>::max();
      for (const auto& s : sources) {
        long dr = s.x() - cell.x();
        long dc = s.y() - cell.y();
        long d2 = dr * dr + dc * dc;
        if (d2 < best) {
          best = d2;
          point_index = mask.cell_to_point[mask.cell(s.x(), s.y())];
        }
      }
    }
    if (point_index < 0) continue;
    const Eigen::Vector2i& px = cloud.pixel_index[point_index];
    size_t id = static_cast<size_t>(px.x()) * map.width + px.y();
    map.graspable[id] = 1;
    map.surface_id[id] = surface_id;
    map.surface_cells[surface_id].push_back(cell);
  }
}

}  // namespace grasp
