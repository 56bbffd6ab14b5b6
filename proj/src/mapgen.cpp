#include "avs/mapgen.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_set>

#include "avs/errors.hpp"
#include "avs/rng.hpp"

namespace avs {
namespace {

struct Region {
    int x0, y0, x1, y1; // inclusive

    int width() const { return x1 - x0 + 1; }
    int height() const { return y1 - y0 + 1; }
    int area() const { return width() * height(); }
};

struct Builder {
    int w, h;
    std::vector<Cell> cells;
    std::unordered_set<int> protected_cells; // doors and their surroundings

    int idx(int x, int y) const { return y * w + x; }
    Cell& at(int x, int y) { return cells[idx(x, y)]; }
    Cell get(int x, int y) const { return cells[idx(x, y)]; }
    bool in(int x, int y) const { return x >= 0 && x < w && y >= 0 && y < h; }

    void protect(int x, int y) {
        protected_cells.insert(idx(x, y));
        for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}})
            if (in(x + dx, y + dy))
                protected_cells.insert(idx(x + dx, y + dy));
    }

    bool empties_connected() const {
        int total = 0, first = -1;
        for (int i = 0; i < w * h; ++i)
            if (cells[i] == Cell::Empty) {
                ++total;
                if (first < 0)
                    first = i;
            }
        if (total == 0)
            return false;
        std::vector<std::uint8_t> seen(cells.size(), 0);
        std::queue<int> queue;
        seen[first] = 1;
        queue.push(first);
        int reached = 0;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop();
            ++reached;
            const int x = v % w, y = v / w;
            for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
                const int nx = x + dx, ny = y + dy;
                if (!in(nx, ny))
                    continue;
                const int u = idx(nx, ny);
                if (!seen[u] && cells[u] == Cell::Empty) {
                    seen[u] = 1;
                    queue.push(u);
                }
            }
        }
        return reached == total;
    }

    bool has_empty_neighbor(int x, int y) const {
        for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}})
            if (in(x + dx, y + dy) && get(x + dx, y + dy) == Cell::Empty)
                return true;
        return false;
    }

    bool touches_occlusion(int x, int y) const {
        for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}})
            if (in(x + dx, y + dy) && get(x + dx, y + dy) == Cell::Occlusion)
                return true;
        return false;
    }
};

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.uniform_index(i)]);
}

bool try_generate(int w, int h, int room_count, double density, Rng& rng, Builder& b) {
    b.w = w;
    b.h = h;
    b.cells.assign(static_cast<std::size_t>(w) * h, Cell::Empty);
    b.protected_cells.clear();
    for (int x = 0; x < w; ++x) {
        b.at(x, 0) = Cell::Occlusion;
        b.at(x, h - 1) = Cell::Occlusion;
    }
    for (int y = 0; y < h; ++y) {
        b.at(0, y) = Cell::Occlusion;
        b.at(w - 1, y) = Cell::Occlusion;
    }

    std::vector<Region> regions{{1, 1, w - 2, h - 2}};
    for (int s = 1; s < room_count; ++s) {
        // Split the largest region that still has room for a wall with two
        // cells on each side.
        int pick = -1;
        for (std::size_t i = 0; i < regions.size(); ++i) {
            if (std::max(regions[i].width(), regions[i].height()) < 5)
                continue;
            if (pick < 0 || regions[i].area() > regions[pick].area())
                pick = static_cast<int>(i);
        }
        if (pick < 0)
            return false;
        Region r = regions[pick];
        regions.erase(regions.begin() + pick);
        if (r.width() >= r.height()) {
            const int wc = r.x0 + 2 + static_cast<int>(rng.uniform_index(r.width() - 4));
            for (int y = r.y0; y <= r.y1; ++y)
                b.at(wc, y) = Cell::Occlusion;
            const int doors = 1 + static_cast<int>(rng.uniform_index(2));
            for (int d = 0; d < doors; ++d) {
                const int dy = r.y0 + static_cast<int>(rng.uniform_index(r.height()));
                b.at(wc, dy) = Cell::Empty;
                b.protect(wc, dy);
            }
            regions.push_back({r.x0, r.y0, wc - 1, r.y1});
            regions.push_back({wc + 1, r.y0, r.x1, r.y1});
        } else {
            const int wc = r.y0 + 2 + static_cast<int>(rng.uniform_index(r.height() - 4));
            for (int x = r.x0; x <= r.x1; ++x)
                b.at(x, wc) = Cell::Occlusion;
            const int doors = 1 + static_cast<int>(rng.uniform_index(2));
            for (int d = 0; d < doors; ++d) {
                const int dx = r.x0 + static_cast<int>(rng.uniform_index(r.width()));
                b.at(dx, wc) = Cell::Empty;
                b.protect(dx, wc);
            }
            regions.push_back({r.x0, r.y0, r.x1, wc - 1});
            regions.push_back({r.x0, wc + 1, r.x1, r.y1});
        }
    }

    // Furniture blobs, kept clear of door cells.
    const int blob_count = (w * h) / 80;
    for (int i = 0; i < blob_count; ++i) {
        const int bw = 1 + static_cast<int>(rng.uniform_index(2));
        const int bh = 1 + static_cast<int>(rng.uniform_index(2));
        if (w - 2 - bw < 1 || h - 2 - bh < 1)
            continue;
        const int bx = 1 + static_cast<int>(rng.uniform_index(w - 2 - bw));
        const int by = 1 + static_cast<int>(rng.uniform_index(h - 2 - bh));
        bool ok = true;
        for (int y = by; y < by + bh && ok; ++y)
            for (int x = bx; x < bx + bw && ok; ++x)
                if (b.get(x, y) != Cell::Empty || b.protected_cells.count(b.idx(x, y)))
                    ok = false;
        if (!ok)
            continue;
        for (int y = by; y < by + bh; ++y)
            for (int x = bx; x < bx + bw; ++x)
                b.at(x, y) = Cell::Occlusion;
    }

    if (!b.empties_connected())
        return false;

    // Candidates go on wall-adjacent cells; each placement must keep the
    // empty region connected and leave the candidate an empty neighbour.
    std::vector<std::pair<int, int>> pool;
    for (int y = 1; y < h - 1; ++y)
        for (int x = 1; x < w - 1; ++x)
            if (b.get(x, y) == Cell::Empty && b.touches_occlusion(x, y))
                pool.emplace_back(x, y);
    if (pool.empty())
        return false;
    shuffle(pool, rng);

    const int k_target = std::max<int>(1, std::lround(density * static_cast<double>(pool.size())));
    int placed = 0;
    for (const auto& [x, y] : pool) {
        if (placed >= k_target)
            break;
        b.at(x, y) = Cell::Candidate;
        if (b.empties_connected() && b.has_empty_neighbor(x, y)) {
            ++placed;
        } else {
            b.at(x, y) = Cell::Empty;
        }
    }
    // Stay within the density contract even when placements were rejected.
    return placed >= std::max(1, (k_target * 17) / 20);
}

} // namespace

MapGenParams preset_params(const std::string& preset) {
    if (preset == "easy")
        return {16, 12, 1, 0.25};
    if (preset == "medium")
        return {24, 18, 2, 0.25};
    if (preset == "hard")
        return {30, 30, 4, 0.30};
    throw ConfigError("unknown map preset: " + preset);
}

GridMap generate_map(int width, int height, int room_count, double candidate_density,
                     std::uint64_t seed) {
    if (width < 4 || height < 4)
        throw ConfigError("map dimensions must be at least 4x4");
    if (!(candidate_density > 0.0 && candidate_density < 1.0))
        throw ConfigError("candidate density must lie in (0, 1)");
    if (room_count < 1)
        throw ConfigError("room count must be at least 1");

    Builder b;
    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        Rng rng(derive_seed(seed, attempt));
        if (try_generate(width, height, room_count, candidate_density, rng, b))
            return GridMap(width, height, std::move(b.cells));
    }
    throw GenerationFailed("no connected layout found within retry budget");
}

} // namespace avs
