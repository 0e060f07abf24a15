// Cell-centered 2-D lattice with per-cell roles, ghost-face classification,
// and the node-indexed field containers used throughout the solver.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace mfc {

enum class Topology : std::uint8_t { Periodic, Walled };
enum class CellRole : std::uint8_t { Free, Obstacle, Exit };

// What lies across a cell face, seen from a Free cell. Ghost closures:
// WallMirror ghost = interior value (zero normal derivative), ExitGhost ghost
// = exit cost for u and 0 for m, PeriodicWrap = value at the wrapped cell.
enum class FaceKind : std::uint8_t { Interior, WallMirror, ExitGhost, PeriodicWrap };

// Face directions in the fixed slot order used by every four-entry array:
// slot 0 = +x (forward), 1 = -x (backward), 2 = +y, 3 = -y.
enum class Dir : int { XPlus = 0, XMinus = 1, YPlus = 2, YMinus = 3 };
inline constexpr std::array<Dir, 4> kAllDirs = {Dir::XPlus, Dir::XMinus,
                                                Dir::YPlus, Dir::YMinus};

class Grid2D {
public:
    static Grid2D periodic(int nx, int ny, double h);
    static Grid2D walled(int nx, int ny, double h, std::vector<CellRole> roles);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double h() const { return h_; }
    double side_length() const { return h_ * nx_; }
    Topology topology() const { return topology_; }
    int num_cells() const { return nx_ * ny_; }

    int index(int i, int j) const { return j * nx_ + i; }
    int col(int idx) const { return idx % nx_; }
    int row(int idx) const { return idx / nx_; }
    double cx(int i) const { return (i + 0.5) * h_; }
    double cy(int j) const { return (j + 0.5) * h_; }

    CellRole role(int idx) const { return roles_[static_cast<size_t>(idx)]; }
    bool is_free(int idx) const { return role(idx) == CellRole::Free; }

    // Index of the cell across the given face; wraps on periodic grids,
    // -1 when the face leaves a walled grid.
    int neighbor(int idx, Dir d) const;

    // Ghost classification of a face of a Free cell.
    FaceKind face_kind(int idx, Dir d) const;

    // Free cells in row-major order, and the inverse map (-1 for non-free).
    const std::vector<int>& free_cells() const { return free_cells_; }
    int free_index(int idx) const { return free_index_[static_cast<size_t>(idx)]; }

    // Character rendering, one row per line: '.' Free, '#' Obstacle, 'E' Exit.
    std::string to_text() const;

private:
    Grid2D() = default;
    void build_free_maps();
    void validate_walled() const;

    int nx_ = 0;
    int ny_ = 0;
    double h_ = 0.0;
    Topology topology_ = Topology::Periodic;
    std::vector<CellRole> roles_;
    std::vector<int> free_cells_;
    std::vector<int> free_index_;
};

// Parses a character grid ('.', '#', 'E'; a first line starting with ';' is
// a comment) into a Walled grid with the given spacing.
Grid2D parse_geometry(const std::string& text, double h = 1.0);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm_sq(const Vec2& v) { return dot(v, v); }

// One real value per cell. Non-free cells carry placeholder values (the exit
// ghost value for u, 0 otherwise); solvers never read them through a face.
struct ScalarField {
    const Grid2D* grid = nullptr;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const Grid2D& g, double fill = 0.0)
        : grid(&g), values(static_cast<size_t>(g.num_cells()), fill) {}

    double& operator[](int idx) { return values[static_cast<size_t>(idx)]; }
    double operator[](int idx) const { return values[static_cast<size_t>(idx)]; }
    int size() const { return static_cast<int>(values.size()); }
};

struct VectorField {
    const Grid2D* grid = nullptr;
    std::vector<Vec2> values;

    VectorField() = default;
    explicit VectorField(const Grid2D& g) : grid(&g), values(static_cast<size_t>(g.num_cells())) {}

    Vec2& operator[](int idx) { return values[static_cast<size_t>(idx)]; }
    const Vec2& operator[](int idx) const { return values[static_cast<size_t>(idx)]; }
};

// Throws InvalidArgument unless both fields refer to the same grid object.
void require_same_grid(const ScalarField& a, const ScalarField& b, const char* what);

}  // namespace mfc
