#include "tangles/model_io.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "tangles/errors.hpp"

namespace tangles {

namespace {

[[noreturn]] void bad_line(std::size_t line, const std::string& what) {
    throw parse_error(what + " at line " + std::to_string(line), line);
}

int parse_index(const std::string& token, std::size_t line) {
    if (token.empty()) bad_line(line, "expected a point index");
    for (char c : token) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            bad_line(line, "'" + token + "' is not a point index");
        }
    }
    if (token.size() > 6) bad_line(line, "point index '" + token + "' is huge");
    return std::stoi(token);
}

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

} // namespace

Model parse_model_text(std::string_view text) {
    std::vector<Line> lines;
    {
        std::size_t number = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos) end = text.size();
            std::string_view raw = text.substr(start, end - start);
            ++number;
            start = end + 1;

            if (const std::size_t hash = raw.find('#');
                hash != std::string_view::npos) {
                raw = raw.substr(0, hash);
            }
            Line line{number, {}};
            std::string word;
            std::istringstream split{std::string(raw)};
            while (split >> word) line.tokens.push_back(word);
            if (!line.tokens.empty()) lines.push_back(std::move(line));
        }
    }

    std::optional<int> points;
    for (const Line& line : lines) {
        if (line.tokens[0] != "points") continue;
        if (points) bad_line(line.number, "second points line");
        if (line.tokens.size() != 2) {
            bad_line(line.number, "points takes exactly one count");
        }
        const int n = parse_index(line.tokens[1], line.number);
        if (n < 1) bad_line(line.number, "need at least one point");
        points = n;
    }
    if (!points) {
        throw parse_error("model has no points line", 0);
    }
    const int n = *points;

    std::vector<std::pair<int, int>> edges;
    std::map<std::string, PointSet> valuation;
    for (const Line& line : lines) {
        const std::string& head = line.tokens[0];
        if (head == "points") continue;
        if (head == "edge") {
            if (line.tokens.size() != 3) {
                bad_line(line.number, "edge takes exactly two points");
            }
            const int a = parse_index(line.tokens[1], line.number);
            const int b = parse_index(line.tokens[2], line.number);
            if (a >= n || b >= n) {
                bad_line(line.number, "edge " + std::to_string(a) + " " +
                                          std::to_string(b) +
                                          " leaves the carrier");
            }
            edges.emplace_back(a, b);
        } else if (head == "val") {
            if (line.tokens.size() < 2) {
                bad_line(line.number, "val needs a name");
            }
            const std::string& name = line.tokens[1];
            try {
                Formula::var(name);
            } catch (const input_error& e) {
                bad_line(line.number, "bad valuation name '" + name +
                                          "': " + e.what());
            }
            if (valuation.count(name)) {
                bad_line(line.number, "valuation '" + name +
                                          "' declared twice");
            }
            PointSet set(n);
            for (std::size_t i = 2; i < line.tokens.size(); ++i) {
                const int x = parse_index(line.tokens[i], line.number);
                if (x >= n) {
                    bad_line(line.number, "point " + std::to_string(x) +
                                              " leaves the carrier");
                }
                set = set.with(x);
            }
            valuation.emplace(name, std::move(set));
        } else {
            bad_line(line.number, "unknown directive '" + head + "'");
        }
    }

    return Model{QuasiOrder::from_edges(n, edges), std::move(valuation)};
}

Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw input_error("cannot read model file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model_text(buffer.str());
}

std::string model_to_text(const Model& m) {
    std::string out = "points " + std::to_string(m.order.size()) + "\n";
    for (int x = 0; x < m.order.size(); ++x) {
        for (int y = 0; y < m.order.size(); ++y) {
            if (x != y && m.order.reaches(x, y)) {
                out += "edge " + std::to_string(x) + " " + std::to_string(y) +
                       "\n";
            }
        }
    }
    for (const auto& [name, points] : m.valuation) {
        out += "val " + name;
        for (int x : points.members()) out += " " + std::to_string(x);
        out += "\n";
    }
    return out;
}

} // namespace tangles
