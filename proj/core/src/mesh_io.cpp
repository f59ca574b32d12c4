#include "wg/mesh_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wg/errors.hpp"

namespace wg {

namespace {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::vector<std::string> next(const char* expecting)
    {
        std::string line;
        if (!std::getline(in_, line))
            throw ParseError(line_ + 1, std::string("unexpected end of file, expected ") + expecting);
        ++line_;
        std::istringstream ss(line);
        std::vector<std::string> tokens;
        for (std::string t; ss >> t;)
            tokens.push_back(std::move(t));
        return tokens;
    }

    std::size_t line() const { return line_; }

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

template <typename T>
T parse_number(const std::string& token, std::size_t line, const char* what)
{
    T value{};
    const char* first = token.data();
    const char* last = first + token.size();
    if constexpr (std::is_floating_point_v<T>) {
        // libstdc++ 11 lacks floating-point from_chars.
        char* end = nullptr;
        value = std::strtod(first, &end);
        if (end != last)
            throw ParseError(line, std::string("invalid ") + what + " '" + token + "'");
    } else {
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last)
            throw ParseError(line, std::string("invalid ") + what + " '" + token + "'");
    }
    return value;
}

std::size_t parse_section(LineReader& r, const char* keyword)
{
    auto t = r.next(keyword);
    if (t.size() != 2 || t[0] != keyword)
        throw ParseError(r.line(), std::string("expected '") + keyword + " <count>'");
    return parse_number<std::size_t>(t[1], r.line(), "count");
}

} // namespace

PolygonalMesh read_mesh(std::istream& in, MeshOptions options)
{
    LineReader r(in);
    auto header = r.next("header");
    if (header.size() != 2 || header[0] != "wgmesh" || header[1] != "1")
        throw ParseError(r.line(), "expected header 'wgmesh 1'");

    const std::size_t nv = parse_section(r, "vertices");
    std::vector<Point> vertices;
    vertices.reserve(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        auto t = r.next("vertex");
        if (t.size() != 2)
            throw ParseError(r.line(), "vertex line needs 2 coordinates");
        vertices.emplace_back(parse_number<double>(t[0], r.line(), "coordinate"),
                              parse_number<double>(t[1], r.line(), "coordinate"));
    }

    const std::size_t ne = parse_section(r, "elements");
    std::vector<std::vector<std::size_t>> elements(ne);
    for (std::size_t k = 0; k < ne; ++k) {
        auto t = r.next("element");
        if (t.size() < 3)
            throw ParseError(r.line(), "element needs at least 3 vertex ids");
        for (const auto& tok : t) {
            const auto v = parse_number<std::size_t>(tok, r.line(), "vertex id");
            if (v >= nv)
                throw ParseError(r.line(), "vertex id " + tok + " out of range");
            elements[k].push_back(v);
        }
    }

    const std::size_t np = parse_section(r, "interfaces");
    std::vector<InterfaceSpec> interfaces;
    interfaces.reserve(np);
    for (std::size_t e = 0; e < np; ++e) {
        auto t = r.next("interface");
        if (t.size() != 5)
            throw ParseError(r.line(), "interface line needs 'v0 v1 left right tag'");
        InterfaceSpec spec;
        spec.v0 = parse_number<std::size_t>(t[0], r.line(), "vertex id");
        spec.v1 = parse_number<std::size_t>(t[1], r.line(), "vertex id");
        const auto left = parse_number<long long>(t[2], r.line(), "element id");
        const auto right = parse_number<long long>(t[3], r.line(), "element id");
        auto tag = parse_boundary_tag(t[4]);
        if (!tag)
            throw ParseError(r.line(), "unknown tag '" + t[4] + "'");
        spec.tag = *tag;
        if (left < 0 && right < 0)
            throw MeshError("interface " + std::to_string(e) + " (line " + std::to_string(r.line()) +
                            ") borders zero elements");
        if (left < 0)
            throw MeshError("interface " + std::to_string(e) + " (line " + std::to_string(r.line()) +
                            ") has no left element");
        spec.left = static_cast<std::size_t>(left);
        if (right >= 0)
            spec.right = static_cast<std::size_t>(right);
        interfaces.push_back(spec);
    }

    return PolygonalMesh(std::move(vertices), std::move(elements), std::move(interfaces), options);
}

PolygonalMesh read_mesh(const std::filesystem::path& path, MeshOptions options)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open " + path.string());
    return read_mesh(in, options);
}

void write_mesh(std::ostream& out, const PolygonalMesh& mesh)
{
    char buf[64];
    out << "wgmesh 1\n";
    out << "vertices " << mesh.num_vertices() << '\n';
    for (const auto& v : mesh.vertices()) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.x(), v.y());
        out << buf;
    }
    out << "elements " << mesh.num_elements() << '\n';
    for (const auto& el : mesh.elements()) {
        for (std::size_t i = 0; i < el.vertex_ids.size(); ++i)
            out << (i ? " " : "") << el.vertex_ids[i];
        out << '\n';
    }
    out << "interfaces " << mesh.num_interfaces() << '\n';
    for (const auto& f : mesh.interfaces()) {
        out << f.v0 << ' ' << f.v1 << ' ' << f.left << ' ';
        if (f.right)
            out << *f.right;
        else
            out << -1;
        out << ' ' << to_string(f.tag) << '\n';
    }
}

void write_mesh(const std::filesystem::path& path, const PolygonalMesh& mesh)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path.string());
    write_mesh(out, mesh);
}

} // namespace wg
