#pragma once

#include <string>
#include <vector>

namespace avs {

enum class Cell : unsigned char {
    Occlusion, // wall or furniture, blocks both motion and line of sight
    Empty,     // traversable, never holds an object
    Candidate, // possible object location, blocks motion but not sight
};

// Occupancy grid over cells tagged occlusion/empty/candidate. Candidate cells
// carry a dense index 0..k-1 assigned in row-major order.
class GridMap {
public:
    GridMap(int width, int height, std::vector<Cell> cells, double cell_size = 1.0);

    int width() const { return width_; }
    int height() const { return height_; }
    double cell_size() const { return cell_size_; }

    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }
    Cell at(int x, int y) const { return cells_[static_cast<std::size_t>(y) * width_ + x]; }

    // Number of candidate locations (k).
    int num_candidates() const { return static_cast<int>(candidate_cells_.size()); }
    // Cell coordinates of candidate j.
    std::pair<int, int> candidate_cell(int j) const { return candidate_cells_[j]; }
    // Candidate index at (x, y), or -1 if the cell is not a candidate.
    int candidate_at(int x, int y) const {
        return candidate_of_cell_[static_cast<std::size_t>(y) * width_ + x];
    }

    const std::vector<Cell>& cells() const { return cells_; }

    std::string to_text() const;

private:
    int width_ = 0;
    int height_ = 0;
    double cell_size_ = 1.0;
    std::vector<Cell> cells_;
    std::vector<std::pair<int, int>> candidate_cells_;
    std::vector<int> candidate_of_cell_;
};

// Parses the text map format: one row per line, glyphs '#'=occlusion,
// '.'=empty, 'o'=candidate, optional first line "size <w> <h>" (validated
// when present). Throws ParseError on unknown glyphs, ragged rows, or a map
// with zero candidates.
GridMap load_map(const std::string& text);

GridMap load_map_file(const std::string& path);

} // namespace avs
