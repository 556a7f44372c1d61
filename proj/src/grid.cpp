#include "smallscat/grid.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "smallscat/errors.hpp"

namespace smallscat {

GridField uniform_field(const Box3& box, const std::array<int, 3>& res, cdouble value) {
    return GridField(box, res, value);
}

double sup_difference(const GridField& a, const GridField& b) {
    if (!a.conformal_with(b)) throw ValidationError("sup_difference: grids are not conformal");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::fmax(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

double sup_abs(const GridField& a) {
    double m = 0.0;
    for (const cdouble& v : a.values) m = std::fmax(m, std::abs(v));
    return m;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_grid(const GridField& g, double k, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("write_grid: cannot open " + path);
    out << "smallscat-grid-v1\n";
    out << "box " << fmt(g.box.lo.x) << ' ' << fmt(g.box.lo.y) << ' ' << fmt(g.box.lo.z) << ' '
        << fmt(g.box.hi.x) << ' ' << fmt(g.box.hi.y) << ' ' << fmt(g.box.hi.z) << '\n';
    out << "resolution " << g.res[0] << ' ' << g.res[1] << ' ' << g.res[2] << '\n';
    out << "k " << fmt(k) << '\n';
    out << "values " << g.size() << '\n';
    for (const cdouble& v : g.values) out << fmt(v.real()) << ' ' << fmt(v.imag()) << '\n';
    if (!out) throw IoError("write_grid: write failed for " + path);
}

GridFile read_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("read_grid: cannot open " + path);
    std::string magic;
    std::getline(in, magic);
    if (magic != "smallscat-grid-v1") throw IoError("read_grid: bad magic in " + path);
    GridFile gf;
    std::string key;
    in >> key;
    if (key != "box") throw IoError("read_grid: expected box in " + path);
    in >> gf.field.box.lo.x >> gf.field.box.lo.y >> gf.field.box.lo.z >> gf.field.box.hi.x >>
        gf.field.box.hi.y >> gf.field.box.hi.z;
    in >> key;
    if (key != "resolution") throw IoError("read_grid: expected resolution in " + path);
    in >> gf.field.res[0] >> gf.field.res[1] >> gf.field.res[2];
    in >> key;
    if (key != "k") throw IoError("read_grid: expected k in " + path);
    in >> gf.k;
    std::size_t count = 0;
    in >> key >> count;
    if (key != "values") throw IoError("read_grid: expected values in " + path);
    gf.field.values.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        double re = 0.0, im = 0.0;
        in >> re >> im;
        gf.field.values[i] = {re, im};
    }
    if (!in) throw IoError("read_grid: truncated file " + path);
    if (count != static_cast<std::size_t>(gf.field.res[0]) * gf.field.res[1] * gf.field.res[2])
        throw IoError("read_grid: value count does not match resolution in " + path);
    return gf;
}

void write_slice_csv(const GridField& g, int axis, int plane_index, const std::string& path) {
    if (axis < 0 || axis > 2) throw ValidationError("write_slice_csv: axis must be 0, 1 or 2");
    if (plane_index < 0 || plane_index >= g.res[axis])
        throw ValidationError("write_slice_csv: plane index out of range");
    std::ofstream out(path);
    if (!out) throw IoError("write_slice_csv: cannot open " + path);
    const int u_axis = (axis + 1) % 3;
    const int v_axis = (axis + 2) % 3;
    out << "u,v,re,im,abs\n";
    auto coord = [](const Vec3& p, int ax) { return ax == 0 ? p.x : (ax == 1 ? p.y : p.z); };
    for (int iu = 0; iu < g.res[u_axis]; ++iu) {
        for (int iv = 0; iv < g.res[v_axis]; ++iv) {
            int idx[3];
            idx[axis] = plane_index;
            idx[u_axis] = iu;
            idx[v_axis] = iv;
            const Vec3 c = g.center(idx[0], idx[1], idx[2]);
            const cdouble v = g.at(idx[0], idx[1], idx[2]);
            out << fmt(coord(c, u_axis)) << ',' << fmt(coord(c, v_axis)) << ',' << fmt(v.real())
                << ',' << fmt(v.imag()) << ',' << fmt(std::abs(v)) << '\n';
        }
    }
    if (!out) throw IoError("write_slice_csv: write failed for " + path);
}

}  // namespace smallscat
