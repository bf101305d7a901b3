#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trackstat {

class SurfaceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Ideal triangulation of a punctured surface. Triangle t has side slots
// 3t+0..3t+2; slot s is traversed counterclockwise from corner s+1 to corner
// s+2, and corner c (opposite side c) lies between slots c+1 and c+2.
// `glued` pairs the two slots of each edge; gluings reverse orientation, so
// start(a) meets end(glued(a)). Vertices are the corner orbits; since the
// triangulation is ideal these are exactly the punctures.
class Triangulation {
public:
    Triangulation() = default;
    // glued: slot involution without fixed points
    explicit Triangulation(std::vector<int> glued);
    // with caller-chosen edge ids (both slots of an edge share one id)
    Triangulation(std::vector<int> glued, std::vector<int> edge_of);

    int num_triangles() const { return static_cast<int>(glued_.size()) / 3; }
    int num_edges() const { return num_triangles() * 3 / 2; }
    int num_slots() const { return static_cast<int>(glued_.size()); }
    int num_vertices() const { return num_vertices_; }

    int partner(int slot) const { return glued_[slot]; }
    int edge_of_slot(int slot) const { return edge_of_[slot]; }
    const std::array<int, 2>& slots_of_edge(int e) const { return edge_slots_[e]; }

    // corner (t,c) <-> index 3t+c
    int vertex_of_corner(int corner) const { return corner_vertex_[corner]; }
    // rotate to the next corner around the shared vertex
    int next_corner(int corner) const;

    // vertices of edge e: (start, end) as seen from its first slot
    std::array<int, 2> edge_vertices(int e) const;

    bool flippable(int e) const;

    // puncture identity tags, preserved by surgeries; defaults to vertex ids
    const std::vector<long long>& vertex_tags() const { return vertex_tags_; }
    void set_vertex_tags(std::vector<long long> tags);

    // connected components as triangle sets
    std::vector<std::vector<int>> components() const;

    struct EulerData {
        int vertices, edges, faces;
        int chi;       // of the punctured surface, = F - E
        int genus;     // from V - E + F = 2 - 2g
        int punctures; // = vertices
    };
    // per connected component; throws on non-integral genus
    std::vector<EulerData> euler_data() const;

    // text form: header "surface g n", one line of three signed 1-based edge
    // labels per triangle (positive on first traversal, negative on second)
    static Triangulation parse(const std::string& text);
    std::string serialize() const;

    bool operator==(const Triangulation& o) const { return glued_ == o.glued_; }

private:
    void rebuild();

    std::vector<int> glued_;
    std::vector<int> edge_of_;
    std::vector<std::array<int, 2>> edge_slots_;
    std::vector<int> corner_vertex_;
    int num_vertices_ = 0;
    std::vector<long long> vertex_tags_;
};

// Normal coordinates of a multicurve: one geometric intersection number per
// edge. Validity means every triangle satisfies the evenness and triangle
// inequalities needed for the corner counts to be nonnegative integers.
struct Multicurve {
    std::vector<long long> w;

    bool operator==(const Multicurve& o) const { return w == o.w; }
    long long total() const;
    bool zero() const;
};

long long side_weight(const Triangulation& T, const Multicurve& m, int slot);
// (b + c - a)/2 for the corner opposite side a; throws on invalid coords
long long corner_weight(const Triangulation& T, const Multicurve& m, int corner);
bool valid_multicurve(const Triangulation& T, const Multicurve& m, std::string* why = nullptr);

// flip edge e, returning the new triangulation and transported coordinates
std::pair<Triangulation, Multicurve> flip(const Triangulation& T, int e, const Multicurve& m);
Triangulation flip(const Triangulation& T, int e);

// normal coordinates of the full boundary of a regular neighborhood of edge
// e together with its endpoint punctures (one or two circles)
Multicurve edge_link(const Triangulation& T, int e);
// small circle about vertex v
Multicurve vertex_link(const Triangulation& T, int v);

struct ComponentList {
    std::vector<Multicurve> coords;        // distinct component classes
    std::vector<long long> multiplicity;   // parallel copies of each
    long long num_components() const;
};
// decompose a valid multicurve into isotopy classes of components
ComponentList trace_components(const Triangulation& T, const Multicurve& m);

// a component is peripheral iff it matches some puncture's link
bool is_peripheral(const Triangulation& T, const Multicurve& component);

}  // namespace trackstat
