#pragma once

#include <string>
#include <variant>

#include "fractree/analysis.hpp"
#include "fractree/compile.hpp"
#include "fractree/discrete.hpp"
#include "fractree/tree.hpp"

namespace fractree {

// Spec documents: {"v":1, "kind":"ifs"|"lsystem"|"generator", ...}.

struct IfsSpec {
    std::vector<SimilarityMap> maps;
    Vec2 root{0.0, 0.0};
    double heading = M_PI / 2.0;
};

struct LsysSpec {
    LSystemSpec system;
    double scale_per_depth = 1.0;
    Vec2 root{0.0, 0.0};
    double heading = M_PI / 2.0;
};

struct GeneratorSpec {
    GeneratorField field{AnalyticProfile::constant(1.0), AnalyticProfile::constant(0.0),
                         PhaseMode::local};
    GeneratorState init{0.0, 0.0, M_PI / 2.0, 0.0};
    double span = 1.0;
    Schedule schedule;
};

using SpecDocument = std::variant<IfsSpec, LsysSpec, GeneratorSpec>;

SpecDocument parse_spec(const std::string& text);
SpecDocument load_spec(const std::string& path);

std::string load_text(const std::string& path);
void save_text(const std::string& path, const std::string& text);

// Analytic profile serialization, e.g. {"kind":"exponential","base":0.88}.
std::string profile_to_json(const AnalyticProfile& p);
AnalyticProfile profile_from_json(const std::string& text);

// Tree files round-trip branch metadata, endpoint states, and sampled
// polylines. Interior sample headings/phases are interpolated on load;
// endpoint states and geometry are exact.
std::string tree_to_json(const GeneratorTree& tree);
GeneratorTree tree_from_json(const std::string& text);

std::string certificate_to_json(const IsomorphismCertificate& cert, double tolerance);
std::string failed_certificate_json(const IsomorphismMismatch& mismatch, int depth);

// Fixed report columns: g,lambda_hat_mean,theta_hat_abs_mean,max_dev and
// k,hausdorff,fitted_ratio.
std::string recovery_to_csv(const RecoveryReport& report);
std::string recovery_to_json(const RecoveryReport& report);
std::string canopy_to_csv(const CanopyReport& report);
std::string canopy_to_json(const CanopyReport& report);

}  // namespace fractree
