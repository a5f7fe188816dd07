#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cstokes {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

struct Rect {
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
};

// One mesh face (edge in 2D). The unit normal is fixed once per face by the
// lexicographic order of its vertex indices: with v[0] < v[1] and tangent
// t = (p1-p0)/|p1-p0|, the normal is nu = (t.y, -t.x). elem_minus is the
// adjacent element on the -nu side, elem_plus on the +nu side, so nu always
// points from elem_minus to elem_plus.
struct Face {
    std::array<int, 2> v{-1, -1};
    Vec2 normal;
    double length = 0.0;
    int elem_minus = -1;
    int elem_plus = -1;

    bool on_boundary() const { return elem_minus < 0 || elem_plus < 0; }
    int single_element() const { return elem_minus >= 0 ? elem_minus : elem_plus; }
};

// Conforming triangulation with oriented faces. Immutable after construction.
struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> elements;  // CCW vertex triples
    std::vector<Face> faces;
    // element_faces[e][i] is the face opposite local vertex i, i.e. the edge
    // between local vertices i+1 and i+2.
    std::vector<std::array<int, 3>> element_faces;
    std::vector<bool> vertex_on_boundary;
    std::vector<double> elem_area;
    std::vector<double> elem_diameter;
    double h = 0.0;          // max element diameter
    double kappa_reg = 0.0;  // max over elements of h_E / inradius(E)

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_elements() const { return static_cast<int>(elements.size()); }
    int n_faces() const { return static_cast<int>(faces.size()); }

    int n_interior_faces() const {
        int n = 0;
        for (const auto& f : faces) n += f.on_boundary() ? 0 : 1;
        return n;
    }

    int n_interior_vertices() const {
        int n = 0;
        for (bool b : vertex_on_boundary) n += b ? 0 : 1;
        return n;
    }

    Vec2 centroid(int e) const {
        const auto& el = elements[e];
        return (1.0 / 3.0) * (vertices[el[0]] + vertices[el[1]] + vertices[el[2]]);
    }

    double domain_area() const {
        double s = 0.0;
        for (double a : elem_area) s += a;
        return s;
    }

    // +1 iff elem is the E_plus side of the face (jump convention f_+ - f_-).
    int jump_sign(int face, int elem) const {
        const Face& f = faces[face];
        if (f.elem_plus == elem) return +1;
        if (f.elem_minus == elem) return -1;
        throw std::invalid_argument("jump_sign: face " + std::to_string(face) +
                                    " is not adjacent to element " + std::to_string(elem));
    }

    // +1 if the global face normal is outward with respect to elem.
    int outward_sign(int face, int elem) const { return -jump_sign(face, elem); }

    std::vector<int> neighbors(int e) const {
        std::vector<int> out;
        for (int f : element_faces[e]) {
            const Face& fc = faces[f];
            int other = (fc.elem_minus == e) ? fc.elem_plus : fc.elem_minus;
            if (other >= 0) out.push_back(other);
        }
        return out;
    }
};

// Builds faces, adjacency, orientation and quality metrics from raw vertex
// and element lists. Throws on non-positive areas or nonconforming input.
inline Mesh make_mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> elements) {
    Mesh m;
    m.vertices = std::move(vertices);
    m.elements = std::move(elements);

    const int nv = m.n_vertices();
    const int ne = m.n_elements();
    if (nv < 3 || ne < 1) throw std::invalid_argument("make_mesh: need at least one triangle");

    m.elem_area.resize(ne);
    m.elem_diameter.resize(ne);
    m.element_faces.assign(ne, {-1, -1, -1});

    std::map<std::pair<int, int>, int> face_of_edge;
    for (int e = 0; e < ne; ++e) {
        const auto& el = m.elements[e];
        for (int i : el)
            if (i < 0 || i >= nv) throw std::invalid_argument("make_mesh: vertex index out of range");
        const Vec2 a = m.vertices[el[0]], b = m.vertices[el[1]], c = m.vertices[el[2]];
        const double area2 = cross(b - a, c - a);
        if (area2 <= 0.0)
            throw std::invalid_argument("make_mesh: element " + std::to_string(e) +
                                        " has non-positive area (orientation must be CCW)");
        m.elem_area[e] = 0.5 * area2;
        const double l01 = norm(b - a), l12 = norm(c - b), l20 = norm(a - c);
        m.elem_diameter[e] = std::max({l01, l12, l20});

        for (int i = 0; i < 3; ++i) {
            // edge opposite local vertex i
            int va = el[(i + 1) % 3], vb = el[(i + 2) % 3];
            auto key = std::minmax(va, vb);
            auto it = face_of_edge.find(key);
            int fidx;
            if (it == face_of_edge.end()) {
                Face f;
                f.v = {key.first, key.second};
                Vec2 d = m.vertices[key.second] - m.vertices[key.first];
                f.length = norm(d);
                if (f.length <= 0.0) throw std::invalid_argument("make_mesh: degenerate edge");
                Vec2 t = (1.0 / f.length) * d;
                f.normal = {t.y, -t.x};
                fidx = m.n_faces();
                m.faces.push_back(f);
                face_of_edge.emplace(key, fidx);
            } else {
                fidx = it->second;
            }
            Face& f = m.faces[fidx];
            Vec2 mid = 0.5 * (m.vertices[f.v[0]] + m.vertices[f.v[1]]);
            double side = dot(f.normal, m.centroid(e) - mid);
            if (side > 0.0) {
                if (f.elem_plus >= 0) throw std::invalid_argument("make_mesh: nonconforming mesh (edge shared by >2 elements)");
                f.elem_plus = e;
            } else {
                if (f.elem_minus >= 0) throw std::invalid_argument("make_mesh: nonconforming mesh (edge shared by >2 elements)");
                f.elem_minus = e;
            }
            m.element_faces[e][i] = fidx;
        }
    }

    m.vertex_on_boundary.assign(nv, false);
    for (const auto& f : m.faces) {
        if (f.on_boundary()) {
            m.vertex_on_boundary[f.v[0]] = true;
            m.vertex_on_boundary[f.v[1]] = true;
        }
    }

    m.h = 0.0;
    m.kappa_reg = 0.0;
    for (int e = 0; e < ne; ++e) {
        m.h = std::max(m.h, m.elem_diameter[e]);
        const auto& el = m.elements[e];
        double per = norm(m.vertices[el[1]] - m.vertices[el[0]]) +
                     norm(m.vertices[el[2]] - m.vertices[el[1]]) +
                     norm(m.vertices[el[0]] - m.vertices[el[2]]);
        double inradius = 2.0 * m.elem_area[e] / per;
        m.kappa_reg = std::max(m.kappa_reg, m.elem_diameter[e] / inradius);
    }
    return m;
}

// Structured triangulation of an axis-aligned rectangle: nx*ny quads, each
// split along its lower-left to upper-right diagonal.
inline Mesh build_structured_rect(int nx, int ny, Rect bounds = {}) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("build_structured_rect: nx and ny must be >= 1");
    if (!(bounds.x1 > bounds.x0) || !(bounds.y1 > bounds.y0))
        throw std::invalid_argument("build_structured_rect: degenerate bounds");

    std::vector<Vec2> verts;
    verts.reserve(static_cast<size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            verts.push_back({bounds.x0 + (bounds.x1 - bounds.x0) * i / nx,
                             bounds.y0 + (bounds.y1 - bounds.y0) * j / ny});

    auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
    std::vector<std::array<int, 3>> elems;
    elems.reserve(static_cast<size_t>(2) * nx * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            int v00 = vid(i, j), v10 = vid(i + 1, j);
            int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
            elems.push_back({v00, v10, v11});
            elems.push_back({v00, v11, v01});
        }
    }
    return make_mesh(std::move(verts), std::move(elems));
}

// Uniform refinement by midpoint split: element e becomes children
// 4e..4e+3 in the order (v0,m01,m20), (m01,v1,m12), (m20,m12,v2),
// (m01,m12,m20). The fixed order is what makes coarse->fine field
// injection in the convergence study exact.
inline Mesh refine_uniform(const Mesh& coarse) {
    std::vector<Vec2> verts = coarse.vertices;
    std::vector<int> midpoint(coarse.n_faces());
    for (int f = 0; f < coarse.n_faces(); ++f) {
        const Face& fc = coarse.faces[f];
        midpoint[f] = static_cast<int>(verts.size());
        verts.push_back(0.5 * (coarse.vertices[fc.v[0]] + coarse.vertices[fc.v[1]]));
    }

    std::vector<std::array<int, 3>> elems;
    elems.reserve(static_cast<size_t>(4) * coarse.n_elements());
    for (int e = 0; e < coarse.n_elements(); ++e) {
        const auto& el = coarse.elements[e];
        // face i is opposite vertex i, so m12 = midpoint of face 0, etc.
        int m12 = midpoint[coarse.element_faces[e][0]];
        int m20 = midpoint[coarse.element_faces[e][1]];
        int m01 = midpoint[coarse.element_faces[e][2]];
        elems.push_back({el[0], m01, m20});
        elems.push_back({m01, el[1], m12});
        elems.push_back({m20, m12, el[2]});
        elems.push_back({m01, m12, m20});
    }
    return make_mesh(std::move(verts), std::move(elems));
}

// Plain-text mesh format:
//   vertices N
//   elements M
//   x y        (N lines)
//   a b c      (M lines, zero-based CCW vertex triples)
inline Mesh read_mesh(std::istream& in) {
    std::string key;
    int nv = 0, ne = 0;
    if (!(in >> key >> nv) || key != "vertices" || nv < 3)
        throw std::runtime_error("read_mesh: expected header 'vertices N'");
    if (!(in >> key >> ne) || key != "elements" || ne < 1)
        throw std::runtime_error("read_mesh: expected header 'elements M'");
    std::vector<Vec2> verts(nv);
    for (int i = 0; i < nv; ++i)
        if (!(in >> verts[i].x >> verts[i].y))
            throw std::runtime_error("read_mesh: bad vertex line " + std::to_string(i));
    std::vector<std::array<int, 3>> elems(ne);
    for (int e = 0; e < ne; ++e)
        if (!(in >> elems[e][0] >> elems[e][1] >> elems[e][2]))
            throw std::runtime_error("read_mesh: bad element line " + std::to_string(e));
    return make_mesh(std::move(verts), std::move(elems));
}

inline Mesh read_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_mesh: cannot open " + path);
    return read_mesh(in);
}

inline void write_mesh(std::ostream& out, const Mesh& m) {
    out << "vertices " << m.n_vertices() << "\n";
    out << "elements " << m.n_elements() << "\n";
    out.precision(17);
    for (const auto& v : m.vertices) out << v.x << " " << v.y << "\n";
    for (const auto& e : m.elements) out << e[0] << " " << e[1] << " " << e[2] << "\n";
}

inline void write_mesh(const std::string& path, const Mesh& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_mesh: cannot open " + path);
    write_mesh(out, m);
}

}  // namespace cstokes
