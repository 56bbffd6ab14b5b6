#include "avs/grid_map.hpp"

#include <fstream>
#include <sstream>

#include "avs/errors.hpp"

namespace avs {

GridMap::GridMap(int width, int height, std::vector<Cell> cells, double cell_size)
    : width_(width), height_(height), cell_size_(cell_size), cells_(std::move(cells)) {
    if (width_ <= 0 || height_ <= 0)
        throw ParseError("map dimensions must be positive");
    if (cells_.size() != static_cast<std::size_t>(width_) * height_)
        throw ParseError("cell array does not match map dimensions");

    candidate_of_cell_.assign(cells_.size(), -1);
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            if (at(x, y) == Cell::Candidate) {
                candidate_of_cell_[static_cast<std::size_t>(y) * width_ + x] =
                    static_cast<int>(candidate_cells_.size());
                candidate_cells_.emplace_back(x, y);
            }
        }
    }
    if (candidate_cells_.empty())
        throw ParseError("map has no candidate locations");
}

std::string GridMap::to_text() const {
    std::string out;
    out.reserve(static_cast<std::size_t>(height_) * (width_ + 1));
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            switch (at(x, y)) {
            case Cell::Occlusion: out += '#'; break;
            case Cell::Empty: out += '.'; break;
            case Cell::Candidate: out += 'o'; break;
            }
        }
        out += '\n';
    }
    return out;
}

GridMap load_map(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> rows;
    int declared_w = -1, declared_h = -1;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (first && line.rfind("size ", 0) == 0) {
            std::istringstream hdr(line.substr(5));
            if (!(hdr >> declared_w >> declared_h))
                throw ParseError("malformed size header: " + line);
            first = false;
            continue;
        }
        first = false;
        if (line.empty())
            continue;
        rows.push_back(line);
    }
    if (rows.empty())
        throw ParseError("empty map");

    const std::size_t w = rows.front().size();
    std::vector<Cell> cells;
    cells.reserve(rows.size() * w);
    for (const auto& row : rows) {
        if (row.size() != w)
            throw ParseError("ragged map rows");
        for (char g : row) {
            switch (g) {
            case '#': cells.push_back(Cell::Occlusion); break;
            case '.': cells.push_back(Cell::Empty); break;
            case 'o': cells.push_back(Cell::Candidate); break;
            default:
                throw ParseError(std::string("unknown map glyph '") + g + "'");
            }
        }
    }
    if (declared_w >= 0 &&
        (declared_w != static_cast<int>(w) || declared_h != static_cast<int>(rows.size())))
        throw ParseError("size header does not match map body");

    return GridMap(static_cast<int>(w), static_cast<int>(rows.size()), std::move(cells));
}

GridMap load_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open map file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_map(buf.str());
}

} // namespace avs
