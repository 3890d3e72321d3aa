#include "fractree/discrete.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "fractree/error.hpp"

namespace fractree {

using nlohmann::json;

Vec2 SimilarityMap::apply(Vec2 p) const {
    double c = std::cos(theta), s = std::sin(theta);
    return {lambda * (c * p.x - s * p.y) + t.x, lambda * (s * p.x + c * p.y) + t.y};
}

int DiscreteTree::max_depth() const {
    int d = 0;
    for (const auto& n : nodes) d = std::max(d, n.depth);
    return d;
}

std::vector<std::vector<int>> DiscreteTree::children_index() const {
    std::vector<std::vector<int>> out(nodes.size());
    for (const auto& n : nodes) {
        if (n.parent) out[static_cast<size_t>(*n.parent)].push_back(n.id);
    }
    return out;
}

namespace {

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(errkind::parse, std::string("malformed spec document: ") + e.what());
    }
}

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw Error(errkind::parse, std::string("missing or non-numeric field '") + key + "'");
    }
    return j[key].get<double>();
}

void check_brackets(const std::string& s, const std::string& where) {
    long depth = 0;
    for (char c : s) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (depth < 0) {
            throw Error(errkind::brackets, "unbalanced brackets in " + where);
        }
    }
    if (depth != 0) {
        throw Error(errkind::brackets, "unbalanced brackets in " + where);
    }
}

}  // namespace

std::vector<SimilarityMap> parse_ifs(const std::string& text) {
    json j = parse_json(text);
    if (!j.contains("maps") || !j["maps"].is_array() || j["maps"].empty()) {
        throw Error(errkind::parse, "ifs spec requires at least one map");
    }
    std::vector<SimilarityMap> maps;
    for (const auto& m : j["maps"]) {
        SimilarityMap map;
        map.lambda = require_number(m, "lambda");
        map.theta = require_number(m, "theta");
        if (!m.contains("t") || !m["t"].is_array() || m["t"].size() != 2) {
            throw Error(errkind::parse, "map field 't' must be a 2-vector");
        }
        map.t = {m["t"][0].get<double>(), m["t"][1].get<double>()};
        if (!(map.lambda > 0.0)) {
            throw Error(errkind::parse, "map lambda must be > 0");
        }
        if (map.lambda >= 1.0) {
            throw Error(errkind::contractivity,
                        "map lambda must be < 1 (contractivity)");
        }
        maps.push_back(map);
    }
    return maps;
}

LSystemSpec parse_lsystem(const std::string& text) {
    json j = parse_json(text);
    LSystemSpec spec;
    if (!j.contains("axiom") || !j["axiom"].is_string() || j["axiom"].get<std::string>().empty()) {
        throw Error(errkind::parse, "lsystem spec requires a non-empty axiom");
    }
    spec.axiom = j["axiom"].get<std::string>();
    check_brackets(spec.axiom, "axiom");
    if (!j.contains("rules") || !j["rules"].is_object()) {
        throw Error(errkind::parse, "lsystem spec requires a rules object");
    }
    for (const auto& [key, value] : j["rules"].items()) {
        if (key.size() != 1) {
            throw Error(errkind::parse, "rule symbols must be single characters");
        }
        if (!value.is_string()) {
            throw Error(errkind::parse, "rule bodies must be strings");
        }
        std::string body = value.get<std::string>();
        check_brackets(body, "rule for '" + key + "'");
        spec.rules[key[0]] = body;
    }
    spec.angle_delta = require_number(j, "angle");
    if (j.contains("iterations_cap")) spec.iterations_cap = j["iterations_cap"].get<int>();
    return spec;
}

std::string serialize_ifs(const std::vector<SimilarityMap>& maps) {
    json arr = json::array();
    for (const auto& m : maps) {
        arr.push_back({{"lambda", m.lambda}, {"theta", m.theta}, {"t", {m.t.x, m.t.y}}});
    }
    json j = {{"v", 1}, {"kind", "ifs"}, {"maps", arr}};
    return j.dump(2);
}

std::string serialize_lsystem(const LSystemSpec& spec) {
    json rules = json::object();
    for (const auto& [sym, body] : spec.rules) rules[std::string(1, sym)] = body;
    json j = {{"v", 1},
              {"kind", "lsystem"},
              {"axiom", spec.axiom},
              {"rules", rules},
              {"angle", spec.angle_delta},
              {"iterations_cap", spec.iterations_cap}};
    return j.dump(2);
}

DiscreteTree expand_discrete(const std::vector<SimilarityMap>& maps, int depth, Vec2 root,
                             const ExpandOptions& opts) {
    if (depth < 0) throw Error(errkind::config, "depth must be >= 0");
    if (maps.empty()) throw Error(errkind::parse, "ifs expansion requires at least one map");

    DiscreteTree tree;
    tree.nodes.push_back({0, std::nullopt, root, 0, std::nullopt});
    std::vector<int> level{0};
    std::uint64_t total = 1;
    for (int d = 1; d <= depth; ++d) {
        total += static_cast<std::uint64_t>(level.size()) * maps.size();
        if (total > opts.budget_cap) {
            throw Error(errkind::budget, "discrete expansion exceeds branch budget");
        }
        std::vector<int> next;
        next.reserve(level.size() * maps.size());
        for (int parent_id : level) {
            Vec2 p = tree.nodes[static_cast<size_t>(parent_id)].pos;
            for (size_t i = 0; i < maps.size(); ++i) {
                DiscreteNode node;
                node.id = static_cast<int>(tree.nodes.size());
                node.parent = parent_id;
                node.pos = maps[i].apply(p);
                node.depth = d;
                node.edge = DiscreteEdgeLabel{maps[i].lambda,
                                              maps[i].theta >= 0.0 ? +1 : -1,
                                              static_cast<int>(i)};
                next.push_back(node.id);
                tree.nodes.push_back(node);
            }
        }
        level = std::move(next);
    }
    return tree;
}

namespace {

std::string rewrite(const LSystemSpec& spec, int depth, std::uint64_t cap) {
    std::string s = spec.axiom;
    for (int i = 0; i < depth; ++i) {
        std::string next;
        next.reserve(s.size() * 4);
        for (char c : s) {
            auto it = spec.rules.find(c);
            if (it != spec.rules.end()) {
                next += it->second;
            } else {
                next += c;  // pass-through symbol
            }
            if (next.size() > cap) {
                throw Error(errkind::budget, "lsystem expansion exceeds budget");
            }
        }
        s = std::move(next);
    }
    return s;
}

}  // namespace

DiscreteTree expand_discrete(const LSystemSpec& spec, int depth, Vec2 root,
                             double scale_per_depth, const ExpandOptions& opts) {
    if (depth < 0) throw Error(errkind::config, "depth must be >= 0");
    if (depth > spec.iterations_cap) {
        throw Error(errkind::config, "depth exceeds the lsystem iterations cap");
    }
    if (!(scale_per_depth > 0.0)) {
        throw Error(errkind::config, "scale_per_depth must be > 0");
    }
    std::string expanded = rewrite(spec, depth, opts.budget_cap * 8);

    DiscreteTree tree;
    tree.nodes.push_back({0, std::nullopt, root, 0, std::nullopt});

    struct TurtleState {
        Vec2 pos;
        double heading;
        double heading_ref;  // heading when the current node became current
        int node_id;
        int bracket_depth;
        double incoming_len;  // segment length that produced the current node
    };
    TurtleState turtle{root, opts.initial_heading, opts.initial_heading, 0, 0, 0.0};
    std::vector<TurtleState> stack;
    std::uint64_t segments = 0;

    for (char c : expanded) {
        switch (c) {
            case 'F': {
                if (++segments > opts.budget_cap) {
                    throw Error(errkind::budget, "lsystem expansion exceeds branch budget");
                }
                double len = std::pow(scale_per_depth, turtle.bracket_depth);
                Vec2 q = turtle.pos + len * unit_dir(turtle.heading);
                double net_turn = wrap_angle(turtle.heading - turtle.heading_ref);
                DiscreteNode node;
                node.id = static_cast<int>(tree.nodes.size());
                node.parent = turtle.node_id;
                node.pos = q;
                node.depth = tree.nodes[static_cast<size_t>(turtle.node_id)].depth + 1;
                double parent_len = turtle.incoming_len;
                node.edge = DiscreteEdgeLabel{
                    parent_len > 0.0 ? len / parent_len : len,
                    net_turn < 0.0 ? -1 : +1, 0};
                tree.nodes.push_back(node);
                turtle.pos = q;
                turtle.node_id = node.id;
                turtle.heading_ref = turtle.heading;
                turtle.incoming_len = len;
                break;
            }
            case '+':
                turtle.heading += spec.angle_delta;
                break;
            case '-':
                turtle.heading -= spec.angle_delta;
                break;
            case '[':
                stack.push_back(turtle);
                ++turtle.bracket_depth;
                break;
            case ']':
                if (stack.empty()) {
                    throw Error(errkind::brackets, "unbalanced ']' during interpretation");
                }
                turtle = stack.back();
                stack.pop_back();
                break;
            default:
                break;  // pass-through symbols are no-ops in the turtle
        }
    }
    return tree;
}

PointSet attractor_points(const std::vector<SimilarityMap>& maps, int depth, Vec2 root,
                          const ExpandOptions& opts) {
    if (depth < 0) throw Error(errkind::config, "depth must be >= 0");
    for (const auto& m : maps) {
        if (m.lambda >= 1.0) {
            throw Error(errkind::contractivity, "attractor requires contractive maps");
        }
    }
    std::vector<Vec2> pts{root};
    for (int k = 0; k < depth; ++k) {
        if (pts.size() * maps.size() > opts.budget_cap) {
            throw Error(errkind::budget, "attractor point count exceeds budget");
        }
        std::vector<Vec2> next;
        next.reserve(pts.size() * maps.size());
        for (const auto& p : pts) {
            for (const auto& m : maps) next.push_back(m.apply(p));
        }
        pts = std::move(next);
    }
    return PointSet(std::move(pts), "A_" + std::to_string(depth));
}

}  // namespace fractree
