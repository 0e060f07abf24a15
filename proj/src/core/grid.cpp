#include "core/grid.hpp"

#include <queue>
#include <sstream>

#include "core/error.hpp"

namespace mfc {

namespace {

constexpr std::array<int, 4> kDx = {1, -1, 0, 0};
constexpr std::array<int, 4> kDy = {0, 0, 1, -1};

char role_char(CellRole r) {
    switch (r) {
        case CellRole::Free: return '.';
        case CellRole::Obstacle: return '#';
        case CellRole::Exit: return 'E';
    }
    return '?';
}

}  // namespace

Grid2D Grid2D::periodic(int nx, int ny, double h) {
    if (nx < 2 || ny < 2)
        throw InvalidArgument("periodic grid needs nx, ny >= 2");
    if (!(h > 0.0))
        throw InvalidArgument("grid spacing must be positive");
    Grid2D g;
    g.nx_ = nx;
    g.ny_ = ny;
    g.h_ = h;
    g.topology_ = Topology::Periodic;
    g.roles_.assign(static_cast<size_t>(nx) * ny, CellRole::Free);
    g.build_free_maps();
    return g;
}

Grid2D Grid2D::walled(int nx, int ny, double h, std::vector<CellRole> roles) {
    if (nx < 1 || ny < 1)
        throw InvalidArgument("walled grid needs nx, ny >= 1");
    if (!(h > 0.0))
        throw InvalidArgument("grid spacing must be positive");
    if (roles.size() != static_cast<size_t>(nx) * ny)
        throw InvalidArgument("role count does not match nx*ny");
    Grid2D g;
    g.nx_ = nx;
    g.ny_ = ny;
    g.h_ = h;
    g.topology_ = Topology::Walled;
    g.roles_ = std::move(roles);
    g.validate_walled();
    g.build_free_maps();
    return g;
}

void Grid2D::build_free_maps() {
    free_cells_.clear();
    free_index_.assign(roles_.size(), -1);
    for (int idx = 0; idx < num_cells(); ++idx) {
        if (roles_[static_cast<size_t>(idx)] == CellRole::Free) {
            free_index_[static_cast<size_t>(idx)] = static_cast<int>(free_cells_.size());
            free_cells_.push_back(idx);
        }
    }
}

void Grid2D::validate_walled() const {
    int first_free = -1;
    for (int idx = 0; idx < num_cells(); ++idx) {
        const int i = col(idx);
        const int j = row(idx);
        if (role(idx) == CellRole::Exit) {
            const bool on_boundary = i == 0 || i == nx_ - 1 || j == 0 || j == ny_ - 1;
            if (!on_boundary) {
                std::ostringstream os;
                os << "exit cell (" << i << "," << j << ") is not on the outer boundary";
                throw InvalidArgument(os.str());
            }
        } else if (role(idx) == CellRole::Free && first_free < 0) {
            first_free = idx;
        }
    }
    if (first_free < 0)
        throw InvalidArgument("geometry has no free cell");

    // Flood fill from the first free cell; free cells must form one component
    // and at least one exit must sit on its boundary.
    std::vector<char> seen(roles_.size(), 0);
    std::queue<int> frontier;
    frontier.push(first_free);
    seen[static_cast<size_t>(first_free)] = 1;
    bool exit_reachable = false;
    while (!frontier.empty()) {
        const int idx = frontier.front();
        frontier.pop();
        const int i = col(idx);
        const int j = row(idx);
        for (int d = 0; d < 4; ++d) {
            const int ni = i + kDx[static_cast<size_t>(d)];
            const int nj = j + kDy[static_cast<size_t>(d)];
            if (ni < 0 || ni >= nx_ || nj < 0 || nj >= ny_)
                continue;
            const int nidx = index(ni, nj);
            if (role(nidx) == CellRole::Exit)
                exit_reachable = true;
            if (role(nidx) == CellRole::Free && !seen[static_cast<size_t>(nidx)]) {
                seen[static_cast<size_t>(nidx)] = 1;
                frontier.push(nidx);
            }
        }
    }
    for (int idx = 0; idx < num_cells(); ++idx) {
        if (role(idx) == CellRole::Free && !seen[static_cast<size_t>(idx)]) {
            std::ostringstream os;
            os << "free region is not connected: cell (" << col(idx) << "," << row(idx)
               << ") is cut off";
            throw InvalidArgument(os.str());
        }
    }
    if (!exit_reachable)
        throw InvalidArgument("no exit is reachable from the free region");
}

int Grid2D::neighbor(int idx, Dir d) const {
    const int slot = static_cast<int>(d);
    int i = col(idx) + kDx[static_cast<size_t>(slot)];
    int j = row(idx) + kDy[static_cast<size_t>(slot)];
    if (topology_ == Topology::Periodic) {
        i = (i + nx_) % nx_;
        j = (j + ny_) % ny_;
        return index(i, j);
    }
    if (i < 0 || i >= nx_ || j < 0 || j >= ny_)
        return -1;
    return index(i, j);
}

FaceKind Grid2D::face_kind(int idx, Dir d) const {
    if (!is_free(idx))
        throw InvalidArgument("face_kind queried on a non-free cell");
    if (topology_ == Topology::Periodic)
        return FaceKind::PeriodicWrap;
    const int nb = neighbor(idx, d);
    if (nb < 0)
        return FaceKind::WallMirror;
    switch (role(nb)) {
        case CellRole::Free: return FaceKind::Interior;
        case CellRole::Obstacle: return FaceKind::WallMirror;
        case CellRole::Exit: return FaceKind::ExitGhost;
    }
    return FaceKind::Interior;
}

std::string Grid2D::to_text() const {
    std::string out;
    out.reserve(static_cast<size_t>((nx_ + 1) * ny_));
    for (int j = 0; j < ny_; ++j) {
        for (int i = 0; i < nx_; ++i)
            out.push_back(role_char(role(index(i, j))));
        out.push_back('\n');
    }
    return out;
}

Grid2D parse_geometry(const std::string& text, double h) {
    std::vector<std::string> rows;
    std::string line;
    std::istringstream is(text);
    bool first = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (first && !line.empty() && line[0] == ';') {
            first = false;
            continue;
        }
        first = false;
        if (line.empty())
            continue;
        rows.push_back(line);
    }
    if (rows.empty())
        throw ParseError("geometry text has no rows");

    const size_t nx = rows[0].size();
    std::vector<CellRole> roles;
    roles.reserve(rows.size() * nx);
    for (size_t j = 0; j < rows.size(); ++j) {
        if (rows[j].size() != nx) {
            std::ostringstream os;
            os << "ragged geometry rows: row " << j + 1 << " has " << rows[j].size()
               << " cells, expected " << nx;
            throw ParseError(os.str());
        }
        for (size_t i = 0; i < nx; ++i) {
            switch (rows[j][i]) {
                case '.': roles.push_back(CellRole::Free); break;
                case '#': roles.push_back(CellRole::Obstacle); break;
                case 'E': roles.push_back(CellRole::Exit); break;
                default: {
                    std::ostringstream os;
                    os << "unknown geometry character '" << rows[j][i] << "' at row "
                       << j + 1 << ", column " << i + 1;
                    throw ParseError(os.str());
                }
            }
        }
    }
    return Grid2D::walled(static_cast<int>(nx), static_cast<int>(rows.size()), h,
                          std::move(roles));
}

void require_same_grid(const ScalarField& a, const ScalarField& b, const char* what) {
    if (a.grid == nullptr || a.grid != b.grid)
        throw InvalidArgument(std::string(what) + ": fields live on different grids");
}

}  // namespace mfc
