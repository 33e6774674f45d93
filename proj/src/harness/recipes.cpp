#include "fpl/harness/recipes.hpp"

#include "fpl/errors.hpp"
#include "fpl/harness/config.hpp"

#include <algorithm>
#include <cmath>

namespace fpl::harness {

using nlohmann::json;

namespace {

double round_sig(double x, int digits) {
  const double scale = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(x))));
  return std::round(x * scale) / scale;
}

std::vector<double> with_anchors(std::vector<double> v, std::initializer_list<double> anchors) {
  for (double a : anchors) {
    // Replace the nearest generated point so the axis length is unchanged.
    auto it = std::min_element(v.begin(), v.end(), [a](double x, double y) {
      return std::abs(x - a) < std::abs(y - a);
    });
    *it = a;
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<double> heatmap_w_axis() {
  std::vector<double> v;
  for (int k = 0; k < 24; ++k) v.push_back(round_sig(0.5 * std::pow(60.0, k / 23.0), 3));
  return with_anchors(v, {1.0, 3.0, 4.0, 30.0});
}

std::vector<double> heatmap_omega_axis() {
  std::vector<double> v;
  for (int k = 0; k < 20; ++k) v.push_back(round_sig(2.0 + 22.0 * k / 19.0, 3));
  return with_anchors(v, {4.2, 8.0, 20.1, 24.0});
}

const std::vector<std::string>& recipe_names() {
  static const std::vector<std::string> names{"fig2", "fig3", "fig4", "fig5-entropy", "fig6-digital"};
  return names;
}

json recipe_preset(const std::string& name) {
  const json heat = {{"W_over_J", heatmap_w_axis()}, {"omega_over_J", heatmap_omega_axis()}};
  if (name == "fig2") {
    return {{"grid", heat}, {"observables", {{"level_stats", true}}}};
  }
  if (name == "fig3") {
    return {{"grid", {{"points", {{3.0, 8.0}, {30.0, 8.0}, {4.0, 20.0}}}}},
            {"protocol", {{"m_cycles", 10}}},
            {"observables",
             {{"kld_pt", true}, {"anti_concentration", true}, {"support", true}, {"kld_vs_m", true}}}};
  }
  if (name == "fig4") {
    return {{"grid", heat},
            {"observables", {{"level_stats", true}, {"kld_pt", true}, {"magnus_defect", true}}}};
  }
  if (name == "fig5-entropy") {
    return {{"grid", heat}, {"observables", {{"entropy", true}, {"kld_pt", true}}}};
  }
  if (name == "fig6-digital") {
    return {{"grid", {{"points", {{3.0, 8.0}}}}},
            {"observables", {{"kld_pt", true}, {"digital_baseline", true}}}};
  }
  throw ConfigError("unknown recipe '" + name + "'");
}

json effective_tree(const std::string& recipe, const json& user, const std::string& out_dir) {
  json t = default_tree();
  if (!recipe.empty()) t = overlay(t, recipe_preset(recipe));
  if (!user.is_null()) t = overlay(t, user);
  if (!out_dir.empty()) t["output"]["directory"] = out_dir;
  return t;
}

}  // namespace fpl::harness
