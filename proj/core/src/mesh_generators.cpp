#include "wg/mesh_generators.hpp"

#include <random>
#include <stdexcept>

namespace wg {

namespace {

std::vector<Point> grid_vertices(std::size_t n, const Rectangle& d)
{
    std::vector<Point> v;
    v.reserve((n + 1) * (n + 1));
    const Point extent = d.upper - d.lower;
    const double dn = static_cast<double>(n);
    for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t i = 0; i <= n; ++i) {
            // (extent * i) / n hits the midline and the far edge exactly.
            const double x = (i == n) ? d.upper.x() : d.lower.x() + extent.x() * static_cast<double>(i) / dn;
            const double y = (j == n) ? d.upper.y() : d.lower.y() + extent.y() * static_cast<double>(j) / dn;
            v.emplace_back(x, y);
        }
    return v;
}

// Uniform double in [0,1) from the top 53 bits; independent of the standard
// library's distribution implementations.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

PolygonalMesh generate_structured_triangles(std::size_t n, const Rectangle& domain)
{
    if (n < 1)
        throw std::invalid_argument("generate_structured_triangles: n must be >= 1");
    auto vertices = grid_vertices(n, domain);
    auto id = [n](std::size_t i, std::size_t j) { return j * (n + 1) + i; };
    std::vector<std::vector<std::size_t>> elems;
    elems.reserve(2 * n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            elems.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            elems.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    auto ifaces = match_interfaces(elems);
    return PolygonalMesh(std::move(vertices), std::move(elems), std::move(ifaces));
}

PolygonalMesh generate_noncompatible_quads(std::size_t n, double refine_fraction, std::uint64_t seed,
                                           const Rectangle& domain)
{
    if (n < 2)
        throw std::invalid_argument("generate_noncompatible_quads: n must be >= 2");
    if (!(refine_fraction >= 0.0 && refine_fraction <= 1.0))
        throw std::invalid_argument("generate_noncompatible_quads: refine_fraction must lie in [0,1]");

    enum class Split { none, vertical, horizontal };
    std::mt19937_64 rng(seed);
    std::vector<Split> split(n * n, Split::none);
    for (auto& s : split) {
        const bool refine = unit_draw(rng) < refine_fraction;
        const bool vertical = unit_draw(rng) < 0.5;
        if (refine)
            s = vertical ? Split::vertical : Split::horizontal;
    }
    auto cell = [&](std::size_t i, std::size_t j) { return split[j * n + i]; };

    auto vertices = grid_vertices(n, domain);
    auto id = [n](std::size_t i, std::size_t j) { return j * (n + 1) + i; };

    // Midpoint vertices on horizontal edges (i, j): between cells (i, j-1) and (i, j).
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> hmid(n * (n + 1), none), vmid((n + 1) * n, none);
    for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const bool below = j > 0 && cell(i, j - 1) == Split::vertical;
            const bool above = j < n && cell(i, j) == Split::vertical;
            if (below || above) {
                hmid[j * n + i] = vertices.size();
                vertices.push_back(0.5 * (vertices[id(i, j)] + vertices[id(i + 1, j)]));
            }
        }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= n; ++i) {
            const bool left = i > 0 && cell(i - 1, j) == Split::horizontal;
            const bool right = i < n && cell(i, j) == Split::horizontal;
            if (left || right) {
                vmid[j * (n + 1) + i] = vertices.size();
                vertices.push_back(0.5 * (vertices[id(i, j)] + vertices[id(i, j + 1)]));
            }
        }

    std::vector<std::vector<std::size_t>> elems;
    auto push_opt = [](std::vector<std::size_t>& poly, std::size_t v) {
        if (v != none)
            poly.push_back(v);
    };
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t bl = id(i, j), br = id(i + 1, j), tr = id(i + 1, j + 1), tl = id(i, j + 1);
            const std::size_t bm = hmid[j * n + i], tm = hmid[(j + 1) * n + i];
            const std::size_t lm = vmid[j * (n + 1) + i], rm = vmid[j * (n + 1) + i + 1];
            switch (cell(i, j)) {
            case Split::none: {
                std::vector<std::size_t> p{bl};
                push_opt(p, bm);
                p.push_back(br);
                push_opt(p, rm);
                p.push_back(tr);
                push_opt(p, tm);
                p.push_back(tl);
                push_opt(p, lm);
                elems.push_back(std::move(p));
                break;
            }
            case Split::vertical: {
                std::vector<std::size_t> west{bl, bm, tm, tl};
                push_opt(west, lm);
                std::vector<std::size_t> east{bm, br};
                push_opt(east, rm);
                east.push_back(tr);
                east.push_back(tm);
                elems.push_back(std::move(west));
                elems.push_back(std::move(east));
                break;
            }
            case Split::horizontal: {
                std::vector<std::size_t> south{bl};
                push_opt(south, bm);
                south.push_back(br);
                south.push_back(rm);
                south.push_back(lm);
                std::vector<std::size_t> north{lm, rm, tr};
                push_opt(north, tm);
                north.push_back(tl);
                elems.push_back(std::move(south));
                elems.push_back(std::move(north));
                break;
            }
            }
        }
    auto ifaces = match_interfaces(elems);
    return PolygonalMesh(std::move(vertices), std::move(elems), std::move(ifaces));
}

PolygonalMesh generate_slit_mesh(std::size_t n)
{
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("generate_slit_mesh: n must be even and >= 2");
    const Rectangle domain{Point(-1.0, -1.0), Point(1.0, 1.0)};
    auto vertices = grid_vertices(n, domain);
    auto id = [n](std::size_t i, std::size_t j) { return j * (n + 1) + i; };
    const std::size_t mid = n / 2;

    // Lower copies of slit points (x > 0, y = 0), used by the cells below.
    std::vector<std::size_t> lower_copy(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        lower_copy[i] = id(i, mid);
        if (i > mid) {
            lower_copy[i] = vertices.size();
            vertices.push_back(vertices[id(i, mid)]);
        }
    }

    std::vector<std::vector<std::size_t>> elems;
    elems.reserve(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t tl = id(i, j + 1), tr = id(i + 1, j + 1);
            if (j + 1 == mid) {
                tl = lower_copy[i];
                tr = lower_copy[i + 1];
            }
            elems.push_back({id(i, j), id(i + 1, j), tr, tl});
        }

    auto tagger = [&](std::size_t k, std::size_t a, std::size_t b) {
        const Point& pa = vertices[a];
        const Point& pb = vertices[b];
        const bool on_slit = pa.y() == 0.0 && pb.y() == 0.0 && pa.x() >= 0.0 && pb.x() >= 0.0;
        if (!on_slit)
            return BoundaryTag::boundary;
        return (k / n) >= mid ? BoundaryTag::top_slit : BoundaryTag::bottom_slit;
    };
    auto ifaces = match_interfaces(elems, tagger);
    return PolygonalMesh(std::move(vertices), std::move(elems), std::move(ifaces));
}

} // namespace wg
