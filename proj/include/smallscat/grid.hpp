#pragma once

#include <array>
#include <string>
#include <vector>

#include "smallscat/types.hpp"

namespace smallscat {

/// Complex- or real-valued field sampled at voxel centers of an axis-aligned box.
/// Storage is row-major in axis order: index = (ix*ny + iy)*nz + iz.
template <typename T>
struct Grid {
    Box3 box;
    std::array<int, 3> res{2, 2, 2};
    std::vector<T> values;

    Grid() = default;
    Grid(const Box3& b, const std::array<int, 3>& r, T fill = T{})
        : box(b), res(r), values(static_cast<std::size_t>(r[0]) * r[1] * r[2], fill) {}

    std::size_t size() const { return values.size(); }

    std::size_t index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * res[1] + iy) * res[2] + iz;
    }

    Vec3 spacing() const {
        const Vec3 e = box.extent();
        return {e.x / res[0], e.y / res[1], e.z / res[2]};
    }

    double voxel_volume() const {
        const Vec3 h = spacing();
        return h.x * h.y * h.z;
    }

    double max_spacing() const {
        const Vec3 h = spacing();
        return std::fmax(h.x, std::fmax(h.y, h.z));
    }

    Vec3 center(int ix, int iy, int iz) const {
        const Vec3 h = spacing();
        return {box.lo.x + (ix + 0.5) * h.x, box.lo.y + (iy + 0.5) * h.y,
                box.lo.z + (iz + 0.5) * h.z};
    }

    Vec3 center(std::size_t flat) const {
        const int nz = res[2], ny = res[1];
        const int iz = static_cast<int>(flat % nz);
        const int iy = static_cast<int>((flat / nz) % ny);
        const int ix = static_cast<int>(flat / (static_cast<std::size_t>(ny) * nz));
        return center(ix, iy, iz);
    }

    T& at(int ix, int iy, int iz) { return values[index(ix, iy, iz)]; }
    const T& at(int ix, int iy, int iz) const { return values[index(ix, iy, iz)]; }

    /// Value of the voxel containing x (nearest voxel for x on/outside the box).
    const T& sample_nearest(const Vec3& x) const {
        const Vec3 h = spacing();
        auto clampi = [](int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); };
        const int ix = clampi(static_cast<int>(std::floor((x.x - box.lo.x) / h.x)), res[0]);
        const int iy = clampi(static_cast<int>(std::floor((x.y - box.lo.y) / h.y)), res[1]);
        const int iz = clampi(static_cast<int>(std::floor((x.z - box.lo.z) / h.z)), res[2]);
        return at(ix, iy, iz);
    }

    bool conformal_with(const Grid& other) const {
        return res == other.res && box.lo == other.box.lo && box.hi == other.box.hi;
    }
};

using GridField = Grid<cdouble>;
using RealGrid = Grid<double>;

GridField uniform_field(const Box3& box, const std::array<int, 3>& res, cdouble value);

/// Max |a - b| over voxels; grids must be conformal.
double sup_difference(const GridField& a, const GridField& b);
double sup_abs(const GridField& a);

// --- persistence -----------------------------------------------------------
//
// Voxel file (text, one complex value per line, %.17g so read-back is exact):
//   smallscat-grid-v1
//   box <lo.x> <lo.y> <lo.z> <hi.x> <hi.y> <hi.z>
//   resolution <nx> <ny> <nz>
//   k <wavenumber>
//   values <count>
//   <re> <im>
//   ...

void write_grid(const GridField& g, double k, const std::string& path);

struct GridFile {
    GridField field;
    double k = 0.0;
};
GridFile read_grid(const std::string& path);

/// CSV slice through a z-plane (axis=2), y-plane (1) or x-plane (0):
/// header "u,v,re,im,abs" where (u,v) are the in-plane coordinates.
void write_slice_csv(const GridField& g, int axis, int plane_index, const std::string& path);

}  // namespace smallscat
