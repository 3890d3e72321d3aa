#include "fractree/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fractree/error.hpp"

namespace fractree {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(errkind::parse, std::string("malformed document: ") + e.what());
    }
}

json profile_to_value(const AnalyticProfile& p) {
    switch (p.kind()) {
        case AnalyticProfile::Kind::constant:
            return {{"kind", "constant"}, {"value", p.p0()}};
        case AnalyticProfile::Kind::exponential:
            return {{"kind", "exponential"}, {"base", p.p0()}};
        case AnalyticProfile::Kind::affine:
            return {{"kind", "affine"}, {"a", p.p0()}, {"b", p.p1()}};
        case AnalyticProfile::Kind::sinusoid:
            return {{"kind", "sinusoid"}, {"k0", p.p0()}, {"eps", p.p1()}, {"omega", p.p2()}};
        case AnalyticProfile::Kind::scaled:
            return {{"kind", "scaled"},
                    {"factor", p.p0()},
                    {"inner", profile_to_value(p.inner())}};
    }
    throw Error(errkind::parse, "unknown profile kind");
}

AnalyticProfile profile_from_value(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw Error(errkind::parse, "profile must be a tagged object");
    }
    const std::string kind = j["kind"].get<std::string>();
    auto num = [&j](const char* key) {
        if (!j.contains(key) || !j[key].is_number()) {
            throw Error(errkind::parse, std::string("profile field '") + key + "' missing");
        }
        return j[key].get<double>();
    };
    if (kind == "constant") return AnalyticProfile::constant(num("value"));
    if (kind == "exponential") return AnalyticProfile::exponential(num("base"));
    if (kind == "affine") return AnalyticProfile::affine(num("a"), num("b"));
    if (kind == "sinusoid") {
        return AnalyticProfile::sinusoid(num("k0"), num("eps"), num("omega"));
    }
    if (kind == "scaled") {
        if (!j.contains("inner")) throw Error(errkind::parse, "scaled profile needs inner");
        return AnalyticProfile::scaled(num("factor"), profile_from_value(j["inner"]));
    }
    throw Error(errkind::parse, "unknown profile kind '" + kind + "'");
}

json state_to_value(const GeneratorState& st) {
    return {{"x", st.x}, {"y", st.y}, {"theta", st.theta}, {"tau", st.tau}};
}

GeneratorState state_from_value(const json& j) {
    GeneratorState st;
    st.x = j.at("x").get<double>();
    st.y = j.at("y").get<double>();
    st.theta = j.at("theta").get<double>();
    st.tau = j.at("tau").get<double>();
    return st;
}

Vec2 vec2_from_value(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2) {
        throw Error(errkind::parse, std::string(what) + " must be a 2-vector");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

std::string phase_mode_name(PhaseMode m) {
    return m == PhaseMode::global ? "global" : "local";
}

PhaseMode phase_mode_from_name(const std::string& name) {
    if (name == "global") return PhaseMode::global;
    if (name == "local") return PhaseMode::local;
    throw Error(errkind::parse, "phase_mode must be 'local' or 'global'");
}

void check_version(const json& j) {
    if (!j.contains("v") || !j["v"].is_number_integer() || j["v"].get<int>() != 1) {
        throw Error(errkind::parse, "document version field 'v' must be 1");
    }
}

Schedule schedule_from_value(const json& j) {
    if (!j.is_array() || j.empty()) {
        throw Error(errkind::parse, "schedule must be a non-empty array of events");
    }
    Schedule schedule;
    for (const auto& ev : j) {
        BranchEvent event;
        if (ev.contains("s_b")) event.s_b = ev["s_b"].get<double>();
        if (!ev.contains("rules") || !ev["rules"].is_array() || ev["rules"].empty()) {
            throw Error(errkind::parse, "branch event needs a non-empty rules array");
        }
        for (const auto& r : ev["rules"]) {
            InheritanceRule rule;
            if (r.contains("lambda")) rule.lambda = r["lambda"].get<double>();
            if (r.contains("sigma")) rule.sigma = r["sigma"].get<int>();
            if (r.contains("kappa_scale")) rule.kappa_scale = r["kappa_scale"].get<double>();
            event.rules.push_back(rule);
        }
        schedule.per_depth.push_back(std::move(event));
    }
    return schedule;
}

}  // namespace

SpecDocument parse_spec(const std::string& text) {
    json j = parse_json(text);
    check_version(j);
    if (!j.contains("kind") || !j["kind"].is_string()) {
        throw Error(errkind::parse, "spec document needs a 'kind' field");
    }
    const std::string kind = j["kind"].get<std::string>();

    if (kind == "ifs") {
        IfsSpec spec;
        spec.maps = parse_ifs(text);
        if (j.contains("root")) spec.root = vec2_from_value(j["root"], "root");
        if (j.contains("heading")) spec.heading = j["heading"].get<double>();
        return spec;
    }
    if (kind == "lsystem") {
        LsysSpec spec;
        spec.system = parse_lsystem(text);
        if (!j.contains("scale_per_depth") || !j["scale_per_depth"].is_number()) {
            throw Error(errkind::parse, "lsystem spec requires scale_per_depth");
        }
        spec.scale_per_depth = j["scale_per_depth"].get<double>();
        if (j.contains("root")) spec.root = vec2_from_value(j["root"], "root");
        if (j.contains("heading")) spec.heading = j["heading"].get<double>();
        return spec;
    }
    if (kind == "generator") {
        GeneratorSpec spec;
        if (!j.contains("rho") || !j.contains("kappa")) {
            throw Error(errkind::parse, "generator spec requires rho and kappa profiles");
        }
        spec.field.rho = profile_from_value(j["rho"]);
        spec.field.kappa = profile_from_value(j["kappa"]);
        if (j.contains("phase_mode")) {
            spec.field.phase_mode = phase_mode_from_name(j["phase_mode"].get<std::string>());
        }
        if (j.contains("span")) spec.span = j["span"].get<double>();
        if (j.contains("init")) spec.init = state_from_value(j["init"]);
        if (!j.contains("schedule")) {
            throw Error(errkind::parse, "generator spec requires a schedule");
        }
        spec.schedule = schedule_from_value(j["schedule"]);
        return spec;
    }
    throw Error(errkind::parse, "unknown spec kind '" + kind + "'");
}

std::string load_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errkind::io, "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errkind::io, "cannot write file: " + path);
    out << text;
    if (!out) throw Error(errkind::io, "failed while writing: " + path);
}

SpecDocument load_spec(const std::string& path) { return parse_spec(load_text(path)); }

std::string profile_to_json(const AnalyticProfile& p) { return profile_to_value(p).dump(); }

AnalyticProfile profile_from_json(const std::string& text) {
    return profile_from_value(parse_json(text));
}

std::string tree_to_json(const GeneratorTree& tree) {
    json branches = json::array();
    for (const auto& b : tree.branches) {
        json polyline = json::array();
        for (const auto& s : b.trajectory.samples) {
            polyline.push_back({s.state.x, s.state.y});
        }
        json jb = {
            {"id", b.id},
            {"parent", b.parent ? json(*b.parent) : json(nullptr)},
            {"depth", b.depth},
            {"rule", b.rule ? json({{"lambda", b.rule->lambda},
                                    {"sigma", b.rule->sigma},
                                    {"kappa_scale", b.rule->kappa_scale}})
                            : json(nullptr)},
            {"init", state_to_value(b.init)},
            {"end", state_to_value(b.trajectory.end_state())},
            {"rho", profile_to_value(b.field.rho)},
            {"kappa", profile_to_value(b.field.kappa)},
            {"phase_mode", phase_mode_name(b.field.phase_mode)},
            {"span", {b.span.begin, b.span.end}},
            {"heading_overridden", b.heading_overridden},
            {"polyline", polyline},
        };
        branches.push_back(std::move(jb));
    }
    json j = {{"v", 1}, {"kind", "tree"}, {"span", tree.span_per_branch},
              {"branches", branches}};
    return j.dump();
}

GeneratorTree tree_from_json(const std::string& text) {
    json j = parse_json(text);
    check_version(j);
    if (!j.contains("kind") || j["kind"] != "tree") {
        throw Error(errkind::parse, "not a tree document");
    }
    GeneratorTree tree;
    tree.span_per_branch = j.at("span").get<double>();
    for (const auto& jb : j.at("branches")) {
        BranchRealization b;
        b.id = jb.at("id").get<int>();
        if (!jb.at("parent").is_null()) b.parent = jb.at("parent").get<int>();
        b.depth = jb.at("depth").get<int>();
        if (!jb.at("rule").is_null()) {
            const auto& r = jb.at("rule");
            b.rule = InheritanceRule{r.at("lambda").get<double>(), r.at("sigma").get<int>(),
                                     r.at("kappa_scale").get<double>()};
        }
        b.init = state_from_value(jb.at("init"));
        GeneratorState end = state_from_value(jb.at("end"));
        b.field.rho = profile_from_value(jb.at("rho"));
        b.field.kappa = profile_from_value(jb.at("kappa"));
        b.field.phase_mode = phase_mode_from_name(jb.at("phase_mode").get<std::string>());
        b.span = {jb.at("span")[0].get<double>(), jb.at("span")[1].get<double>()};
        b.heading_overridden = jb.at("heading_overridden").get<bool>();

        const auto& poly = jb.at("polyline");
        if (!poly.is_array() || poly.empty()) {
            throw Error(errkind::parse, "branch polyline must be a non-empty array");
        }
        size_t n = poly.size();
        double len = b.span.length();
        b.trajectory.span = b.span;
        b.trajectory.field = b.field;
        for (size_t i = 0; i < n; ++i) {
            double f = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
            Sample s;
            s.s = b.span.begin + f * len;
            s.state.x = poly[i][0].get<double>();
            s.state.y = poly[i][1].get<double>();
            s.state.theta = b.init.theta + f * (end.theta - b.init.theta);
            s.state.tau = b.init.tau + f * (end.tau - b.init.tau);
            b.trajectory.samples.push_back(s);
        }
        // Endpoint states are exact, not interpolated.
        b.trajectory.samples.front().state = b.init;
        b.trajectory.samples.back().state = end;
        tree.branches.push_back(std::move(b));
    }
    return tree;
}

std::string certificate_to_json(const IsomorphismCertificate& cert, double tolerance) {
    json j = {{"isomorphic", true},
              {"depth", cert.depth_checked},
              {"max_gap", cert.max_position_gap},
              {"node_count", cert.node_pairing.size()},
              {"within_tolerance", cert.max_position_gap < tolerance},
              {"tolerance", tolerance}};
    return j.dump(2);
}

std::string failed_certificate_json(const IsomorphismMismatch& mismatch, int depth) {
    json j = {{"isomorphic", false},
              {"depth", depth},
              {"mismatch",
               {{"scaffold_node", mismatch.scaffold_node},
                {"discrete_node", mismatch.discrete_node},
                {"reason", mismatch.reason}}}};
    return j.dump(2);
}

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::string recovery_to_csv(const RecoveryReport& report) {
    std::string out = "g,lambda_hat_mean,theta_hat_abs_mean,max_dev\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.g) + "," + format_double(row.lambda_hat_mean) + "," +
               format_double(row.theta_hat_abs_mean) + "," + format_double(row.max_deviation) +
               "\n";
    }
    return out;
}

std::string recovery_to_json(const RecoveryReport& report) {
    json rows = json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"g", row.g},
                        {"lambda_hat_mean", row.lambda_hat_mean},
                        {"theta_hat_abs_mean", row.theta_hat_abs_mean},
                        {"sample_count", row.sample_count},
                        {"max_dev", row.max_deviation}});
    }
    return json{{"rows", rows}}.dump(2);
}

std::string canopy_to_csv(const CanopyReport& report) {
    std::string out = "k,hausdorff,fitted_ratio\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.k) + "," + format_double(row.hausdorff) + "," +
               format_double(report.fitted_ratio) + "\n";
    }
    return out;
}

std::string canopy_to_json(const CanopyReport& report) {
    json rows = json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"k", row.k}, {"hausdorff", row.hausdorff}});
    }
    return json{{"rows", rows}, {"fitted_ratio", report.fitted_ratio}, {"k_ref", report.k_ref}}
        .dump(2);
}

}  // namespace fractree
