#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace fpl::harness {

/// fig2, fig3, fig4, fig5-entropy, fig6-digital.
const std::vector<std::string>& recipe_names();

/// Config patch for a recipe; throws ConfigError for an unknown name.
nlohmann::json recipe_preset(const std::string& name);

/// Heatmap axes: 24 log-spaced W/J in [0.5, 30] and 20 omega/J in [2, 24],
/// both containing the anchor points the figures single out.
std::vector<double> heatmap_w_axis();
std::vector<double> heatmap_omega_axis();

/// defaults <- recipe preset <- user config <- output directory override.
nlohmann::json effective_tree(const std::string& recipe, const nlohmann::json& user,
                              const std::string& out_dir);

}  // namespace fpl::harness
