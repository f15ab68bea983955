#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "cohesion/error.hpp"
#include "cohesion/graph.hpp"

namespace cohesion {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

struct RawEdge {
    std::size_t u, v;
    double w;
    std::size_t line;
};

}  // namespace

LabeledGraph parse_edge_list(std::string_view text, bool directed, TiePolicy policy) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, std::size_t> index;
    auto intern = [&](std::string_view label) {
        auto [it, inserted] = index.emplace(std::string(label), labels.size());
        if (inserted) labels.emplace_back(label);
        return it->second;
    };

    std::vector<RawEdge> raw;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        if (line.rfind("#% labels", 0) == 0) {
            auto tokens = split_ws(line.substr(9));
            for (auto t : tokens) intern(t);
            continue;
        }
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tokens = split_ws(line);
        if (tokens.empty()) continue;
        if (tokens.size() < 2 || tokens.size() > 3) {
            throw ParseError(line_no, "expected `u v [w]`, got " + std::to_string(tokens.size()) +
                                          " field(s)");
        }
        double w = 1.0;
        if (tokens.size() == 3) {
            auto t = tokens[2];
            auto res = std::from_chars(t.data(), t.data() + t.size(), w);
            if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
                throw ParseError(line_no, "weight `" + std::string(t) + "` is not a number");
            }
            if (w < 0.0) {
                throw ValidationError("line " + std::to_string(line_no) + ": negative weight " +
                                      std::string(t));
            }
        }
        if (tokens[0] == tokens[1]) {
            throw ValidationError("line " + std::to_string(line_no) + ": self-loop on `" +
                                  std::string(tokens[0]) + "`");
        }
        const std::size_t u = intern(tokens[0]);
        const std::size_t v = intern(tokens[1]);
        raw.push_back(RawEdge{u, v, w, line_no});
    }

    Graph g(labels.size(), directed, policy);
    for (const auto& e : raw) {
        if (e.w == 0.0) continue;  // explicit zero weight means no tie
        try {
            g.add_edge(e.u, e.v, e.w);
        } catch (const ValidationError& err) {
            throw ValidationError("line " + std::to_string(e.line) + ": " + err.what());
        }
    }
    return LabeledGraph{std::move(g), std::move(labels)};
}

std::string to_edge_list(const Graph& g, std::span<const std::string> labels) {
    std::vector<std::string> defaults;
    if (labels.empty()) {
        defaults.reserve(g.node_count());
        for (std::size_t i = 0; i < g.node_count(); ++i) defaults.push_back(std::to_string(i));
        labels = defaults;
    }
    if (labels.size() != g.node_count()) {
        throw ValidationError("label count does not match node count");
    }
    std::ostringstream os;
    os << "#% labels";
    for (const auto& l : labels) os << ' ' << l;
    os << '\n';
    for (const auto& e : g.edges()) {
        os << labels[e.u] << ' ' << labels[e.v];
        if (e.weight != 1.0) os << ' ' << format_double(e.weight);
        os << '\n';
    }
    return os.str();
}

LabeledGraph read_edge_list_file(const std::filesystem::path& path, bool directed,
                                 TiePolicy policy) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_edge_list(ss.str(), directed, policy);
}

void write_edge_list_file(const std::filesystem::path& path, const Graph& g,
                          std::span<const std::string> labels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << to_edge_list(g, labels);
}

}  // namespace cohesion
