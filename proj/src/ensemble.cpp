#include "smallscat/ensemble.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "smallscat/errors.hpp"

namespace smallscat {

void DomainBox::validate(double a) const {
    const Vec3 e = box.extent();
    if (!(e.x > 0.0 && e.y > 0.0 && e.z > 0.0))
        throw ValidationError("DomainBox: lo must be strictly below hi componentwise");
    if (!(cube_side > 0.0) || cube_side > box.min_side() + 1e-12)
        throw ValidationError("DomainBox: cube_side must lie in (0, min side]");
    if (a > 0.0 && cube_side < 10.0 * a)
        throw ValidationError("DomainBox: cube_side must be >= 10a for counting semantics");
}

CubePartition CubePartition::make(const DomainBox& d) {
    CubePartition p;
    p.box = d.box;
    const Vec3 e = d.box.extent();
    const double b = d.cube_side;
    p.counts = {std::max(1, static_cast<int>(std::lround(e.x / b))),
                std::max(1, static_cast<int>(std::lround(e.y / b))),
                std::max(1, static_cast<int>(std::lround(e.z / b)))};
    return p;
}

Box3 CubePartition::cell(int ix, int iy, int iz) const {
    const Vec3 e = box.extent();
    const double hx = e.x / counts[0], hy = e.y / counts[1], hz = e.z / counts[2];
    const Vec3 lo{box.lo.x + ix * hx, box.lo.y + iy * hy, box.lo.z + iz * hz};
    return {lo, {lo.x + hx, lo.y + hy, lo.z + hz}};
}

Box3 CubePartition::cell(int flat) const {
    const int nz = counts[2], ny = counts[1];
    return cell(flat / (ny * nz), (flat / nz) % ny, flat % nz);
}

long cube_count(const ScalingLaw& law, const Box3& cell, int refine) {
    law.validate();
    if (refine < 1) throw ValidationError("cube_count: refine must be >= 1");
    const Vec3 e = cell.extent();
    const double panel_vol = cell.volume() / (static_cast<double>(refine) * refine * refine);
    double integral = 0.0;
    for (int i = 0; i < refine; ++i)
        for (int j = 0; j < refine; ++j)
            for (int k = 0; k < refine; ++k) {
                const Vec3 x{cell.lo.x + (i + 0.5) * e.x / refine,
                             cell.lo.y + (j + 0.5) * e.y / refine,
                             cell.lo.z + (k + 0.5) * e.z / refine};
                const double n = law.N(x);
                if (n < 0.0) throw ValidationError("cube_count: negative density N encountered");
                integral += n * panel_vol;
            }
    const double raw = std::pow(law.a, -3.0 * law.kappa1) * integral;
    // "Integer nearest": round half to even, the FE_TONEAREST default.
    return std::lround(std::nearbyint(raw));
}

namespace {

std::uint64_t splitmix64(std::uint64_t s) {
    s += 0x9e3779b97f4a7c15ULL;
    s = (s ^ (s >> 30)) * 0xbf58476d1ce4e5b9ULL;
    s = (s ^ (s >> 27)) * 0x94d049bb133111ebULL;
    return s ^ (s >> 31);
}

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
    // Rejection sampling keeps the draw unbiased and engine-deterministic.
    const std::uint64_t threshold = (0ULL - n) % n;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[bounded_draw(rng, i)]);
}

}  // namespace

ParticleEnsemble place_particles(const ScalingLaw& law, const DomainBox& box, std::uint64_t seed,
                                 const PlacementOptions& opts) {
    law.validate();
    box.validate(law.a);
    if (!(opts.spacing_prefactor > 0.0))
        throw ValidationError("place_particles: spacing prefactor must be positive");

    ParticleEnsemble ens;
    ens.a = law.a;
    ens.kappa = law.kappa;
    ens.kappa1 = law.kappa1;
    ens.seed = seed;
    ens.domain = box;
    ens.spacing_prefactor = opts.spacing_prefactor;
    const double d = opts.spacing_prefactor * std::pow(law.a, law.kappa1);
    ens.spacing = d;

    const CubePartition part = CubePartition::make(box);
    ens.cube_counts.resize(part.total());

    for (int c = 0; c < part.total(); ++c) {
        const Box3 cell = part.cell(c);
        const long want = cube_count(law, cell, opts.density_refine);
        ens.cube_counts[c] = want;
        if (want == 0) continue;

        // Centered sub-lattice of pitch d inside the cell. Successive cells
        // keep >= d/2 clearance to their faces, so the global min distance
        // stays >= d.
        const Vec3 e = cell.extent();
        const int nx = static_cast<int>(std::floor(e.x / d + 1e-9));
        const int ny = static_cast<int>(std::floor(e.y / d + 1e-9));
        const int nz = static_cast<int>(std::floor(e.z / d + 1e-9));
        std::vector<Vec3> sites;
        if (nx >= 1 && ny >= 1 && nz >= 1) {
            sites.reserve(static_cast<std::size_t>(nx) * ny * nz);
            const Vec3 off{cell.lo.x + 0.5 * (e.x - nx * d) + 0.5 * d,
                           cell.lo.y + 0.5 * (e.y - ny * d) + 0.5 * d,
                           cell.lo.z + 0.5 * (e.z - nz * d) + 0.5 * d};
            for (int i = 0; i < nx; ++i)
                for (int j = 0; j < ny; ++j)
                    for (int k = 0; k < nz; ++k) {
                        const Vec3 s{off.x + i * d, off.y + j * d, off.z + k * d};
                        // Balls must lie inside D: keep >= a from the boundary.
                        if (box.box.interior_clearance(s) >= law.a) sites.push_back(s);
                    }
        }
        if (static_cast<long>(sites.size()) < want) {
            std::ostringstream msg;
            msg << "place_particles: cube " << c << " cannot hold " << want << " particles ("
                << sites.size() << " lattice sites of pitch " << d << ")";
            throw CapacityError(msg.str());
        }
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(c) + 1)));
        seeded_shuffle(sites, rng);
        for (long i = 0; i < want; ++i) {
            ens.centers.push_back(sites[i]);
            ens.zeta.push_back(law.zeta_at(sites[i]));
            if (ens.zeta.back().imag() > 0.0)
                throw PassivityError("place_particles: Im h > 0 at a particle center");
        }
    }
    return ens;
}

double empirical_density(const ParticleEnsemble& ens, const Box3& probe) {
    if (!(probe.volume() > 0.0)) throw DomainError("empirical_density: zero-volume probe");
    std::size_t count = 0;
    for (const Vec3& c : ens.centers)
        if (probe.contains(c)) ++count;
    return static_cast<double>(count) * std::pow(ens.a, 3.0 * ens.kappa1) / probe.volume();
}

double min_pairwise_distance(const ParticleEnsemble& ens) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ens.centers.size(); ++i)
        for (std::size_t j = i + 1; j < ens.centers.size(); ++j)
            best = std::fmin(best, norm(ens.centers[i] - ens.centers[j]));
    return best;
}

cdouble particle_coupling(const ParticleEnsemble& ens, std::size_t m) {
    return monopole_coupling_from_zeta(ens.zeta[m], ens.a);
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_manifest(const ParticleEnsemble& ens, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("write_manifest: cannot open " + path);
    out << "smallscat-ensemble-v1\n";
    out << "a " << fmt(ens.a) << '\n';
    out << "kappa " << fmt(ens.kappa) << '\n';
    out << "kappa1 " << fmt(ens.kappa1) << '\n';
    out << "seed " << ens.seed << '\n';
    out << "spacing " << fmt(ens.spacing) << '\n';
    out << "prefactor " << fmt(ens.spacing_prefactor) << '\n';
    out << "box " << fmt(ens.domain.box.lo.x) << ' ' << fmt(ens.domain.box.lo.y) << ' '
        << fmt(ens.domain.box.lo.z) << ' ' << fmt(ens.domain.box.hi.x) << ' '
        << fmt(ens.domain.box.hi.y) << ' ' << fmt(ens.domain.box.hi.z) << '\n';
    out << "cube_side " << fmt(ens.domain.cube_side) << '\n';
    out << "counts " << ens.cube_counts.size();
    for (long c : ens.cube_counts) out << ' ' << c;
    out << '\n';
    out << "particles " << ens.size() << '\n';
    for (std::size_t m = 0; m < ens.size(); ++m)
        out << m << ' ' << fmt(ens.centers[m].x) << ' ' << fmt(ens.centers[m].y) << ' '
            << fmt(ens.centers[m].z) << ' ' << fmt(ens.zeta[m].real()) << ' '
            << fmt(ens.zeta[m].imag()) << '\n';
    if (!out) throw IoError("write_manifest: write failed for " + path);
}

ParticleEnsemble read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("read_manifest: cannot open " + path);
    std::string magic;
    std::getline(in, magic);
    if (magic != "smallscat-ensemble-v1") throw IoError("read_manifest: bad magic in " + path);
    ParticleEnsemble ens;
    auto expect = [&](const char* want) {
        std::string key;
        in >> key;
        if (key != want) throw IoError(std::string("read_manifest: expected ") + want);
    };
    expect("a");
    in >> ens.a;
    expect("kappa");
    in >> ens.kappa;
    expect("kappa1");
    in >> ens.kappa1;
    expect("seed");
    in >> ens.seed;
    expect("spacing");
    in >> ens.spacing;
    expect("prefactor");
    in >> ens.spacing_prefactor;
    expect("box");
    in >> ens.domain.box.lo.x >> ens.domain.box.lo.y >> ens.domain.box.lo.z >>
        ens.domain.box.hi.x >> ens.domain.box.hi.y >> ens.domain.box.hi.z;
    expect("cube_side");
    in >> ens.domain.cube_side;
    expect("counts");
    std::size_t ncubes = 0;
    in >> ncubes;
    ens.cube_counts.resize(ncubes);
    for (std::size_t i = 0; i < ncubes; ++i) in >> ens.cube_counts[i];
    expect("particles");
    std::size_t m = 0;
    in >> m;
    ens.centers.resize(m);
    ens.zeta.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t idx = 0;
        double re = 0.0, im = 0.0;
        in >> idx >> ens.centers[i].x >> ens.centers[i].y >> ens.centers[i].z >> re >> im;
        ens.zeta[i] = {re, im};
    }
    if (!in) throw IoError("read_manifest: truncated file " + path);
    return ens;
}

}  // namespace smallscat
