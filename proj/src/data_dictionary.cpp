#include <string>
#include <string_view>

#include <fmt/format.h>

#include "atd/config_io.hpp"
#include "atd/report_format.hpp"

namespace atd {

namespace {

struct Entry {
  std::string_view field;
  std::string_view symbol;
  std::string_view scale;
  std::string_view units;
  std::string default_value;
  std::string_view meaning;
};

}  // namespace

std::string emit_data_dictionary() {
  const Reference ref = default_reference();
  const Entry entries[] = {
      {"reference.u0", "U0", "> 0", "index", format_number(ref.u0), "Reference adoption level"},
      {"reference.s0", "S0", "> 0", "index", format_number(ref.s0),
       "Reference surface area (tools, connectors, sources)"},
      {"reference.h0", "H0", "> 0", "steps", format_number(ref.h0), "Reference workflow horizon"},
      {"reference.a0", "A0", "[0,1]", "score", format_number(ref.a0), "Reference autonomy"},
      {"reference.theta0", "Theta0", "[0,1]", "score", format_number(ref.theta0),
       "Reference model or platform variability"},
      {"category.<id>.f", "F_k", ">= 0", "currency per period", "required",
       "Fixed or semi-fixed cost of the category"},
      {"category.<id>.v", "V_k", ">= 0", "currency per transaction", "required",
       "Baseline variable cost per completed transaction"},
      {"category.<id>.beta", "beta_k", ">= 0", "unitless", "required",
       "Debt sensitivity; the category cost is scaled by 1 + beta_k * D"},
      {"category.<id>.gamma_u", "gammaU_k", "real", "elasticity", "0", "Response to adoption U"},
      {"category.<id>.gamma_s", "gammaS_k", "real", "elasticity", "0",
       "Response to surface area S"},
      {"category.<id>.gamma_h", "gammaH_k", "real", "elasticity", "0", "Response to horizon H"},
      {"category.<id>.gamma_a", "gammaA_k", "real", "semi-elasticity", "0",
       "Response to autonomy A"},
      {"category.<id>.gamma_theta", "gammaTheta_k", "real", "semi-elasticity", "0",
       "Response to variability Theta"},
      {"category.<id>.status", "-", "expert_prior|before_after|regression|validated", "label",
       "expert_prior", "Calibration status of beta_k"},
      {"n", "N", ">= 0", "transactions per period", "required", "Completed transactions"},
      {"d", "D", "[0,1]", "index", "required", "Composite debt index"},
      {"u", "U", "> 0", "index", "n when meta.tie_u_to_n",
       "Adoption or usage exposure (users, teams, usage contexts)"},
      {"s", "S", "> 0", "index", "required",
       "Surface area: tools, connectors, context sources, permissions"},
      {"h", "H", "> 0", "steps", "required", "Horizon: dependent agentic steps in the chain"},
      {"a", "A", "[0,1]", "score", "required",
       "Autonomy and action criticality: 0 advisory, 0.5 approval required, 1 direct execution"},
      {"theta", "Theta", "[0,1]", "score", "required",
       "Model or platform variability: 0 stable, 0.5 moderate drift, 1 high variability"},
      {"debt.<component>", "d^i", "[0,1]", "score", "required",
       "Component debt score for ctx, tool, mem, orch, obs, plat"},
      {"debt.weight.<component>", "omega_i", ">= 0", "unitless", "1/6",
       "Index weight of a component"},
      {"debt.coupling.<a>_<b>", "omega_ij", ">= 0", "unitless", "0",
       "Index weight of a component pair interaction"},
      {"debt.cost_rem.<component>", "crem_i", ">= 0", "currency", "required",
       "Cost of fully remediating a component"},
      {"debt.cost_coord.<a>_<b>", "ccoord_ij", ">= 0", "currency", "0",
       "Coordination premium for remediating a pair together"},
      {"debt.cost_retest", "cretest", ">= 0", "currency", "0", "Retest cost after remediation"},
      {"path.<name>.acc", "Delta_acc", ">= 0", "index per period", "required",
       "Debt accrued per period"},
      {"path.<name>.rem", "Delta_rem", ">= 0", "index per period", "required",
       "Debt remediated per period"},
      {"path.<name>.d0", "D0", "[0,1]", "index", "required", "Starting debt index"},
      {"tst", "TST", ">= 0", "currency per period", "output", "Total stochastic tax"},
      {"st_per_tx", "ST", ">= 0", "currency per transaction", "output",
       "Stochastic tax per completed transaction"},
      {"st0_per_tx", "ST0", ">= 0", "currency per transaction", "output",
       "Baseline tax: the same point evaluated at D = 0"},
      {"std_per_tx", "STD", "real", "currency per transaction", "output",
       "Debt-amplified tax: ST - ST0"},
  };

  std::string out = "field | symbol | scale | units | default | meaning\n";
  for (const auto& e : entries)
    out += fmt::format("{} | {} | {} | {} | {} | {}\n", e.field, e.symbol, e.scale, e.units,
                       e.default_value, e.meaning);
  out += "\ncategory ids:\n";
  for (Category c : kAllCategories)
    out += fmt::format("  {} | {}\n", to_string(c), display_name(c));
  out += "\ncomponent ids:\n";
  constexpr std::string_view component_names[] = {
      "Context and prompt",  "Tool and schema",           "Memory and state",
      "Orchestration and routing", "Observability and governance", "Platform coupling"};
  for (std::size_t i = 0; i < kComponentCount; ++i)
    out += fmt::format("  {} | {}\n", to_string(kAllComponents[i]), component_names[i]);
  return out;
}

}  // namespace atd
