#include "liouv/cost.hpp"

#include <cmath>
#include <sstream>

namespace liouv {
namespace cost {

long hamsim_cost(double alpha, double t, double eps) {
  return static_cast<long>(std::ceil(6.0 * alpha * std::abs(t) + 9.0 * std::log(12.0 / eps)));
}

long angleless_hamsim_cost(double alpha, double t, double eps) {
  return static_cast<long>(
      std::ceil(48.0 * alpha * std::abs(t) + 72.0 * std::log(48.0 * (1.0 + std::sqrt(2.0)) / eps) - 6.0));
}

GspCost gsp_cost(double lambda, double delta, double gamma, double eps_prep) {
  GspCost out;
  out.queries_uh = {"gsp_queries_uh", "(lambda/(delta*gamma)) * log(1/(delta*eps_prep))",
                    lambda / (delta * gamma) * std::log(1.0 / (delta * eps_prep)), true};
  out.queries_ui = {"gsp_queries_ui", "1/delta", 1.0 / delta, true};
  return out;
}

std::pair<Table1Row, Table1Row> table1_compare(const Table1Params& p) {
  const double ntot = p.n_nuclei + p.n_electrons;
  Table1Row ours, prior;
  ours.simulation = {"ours_simulation", "N*Ne*Ntot^3*t/(delta*gamma) * log(1/eps)^3",
                     p.n_nuclei * p.n_electrons * std::pow(ntot, 3) * p.t / (p.delta * p.gamma) *
                         std::pow(std::log(1.0 / p.eps), 3),
                     true};
  ours.free_energy = {"ours_free_energy", "N*Ne*Ntot^5*t/(delta*gamma*eps) * log(1/xi)",
                      p.n_nuclei * p.n_electrons * std::pow(ntot, 5) * p.t / (p.delta * p.gamma * p.eps) *
                          std::log(1.0 / p.xi),
                      true};
  prior.simulation = {"prior_simulation", "N^2*Ne^2*Ntot^3*t/(delta*gamma) * eps^{-o(1)} (o(1) -> 0)",
                      std::pow(p.n_nuclei, 2) * std::pow(p.n_electrons, 2) * std::pow(ntot, 3) * p.t /
                          (p.delta * p.gamma),
                      true};
  prior.free_energy = {"prior_free_energy",
                       "(eta^{o(1)}*N^2*Ne^2*Ntot^3*t/(delta*gamma*eps) * (Ntot^2 + eta/sqrt(eps)) + "
                       "Ne*Ntot^4/eps^2) * log(1/xi)  (o(1) -> 0)",
                       (std::pow(p.n_nuclei, 2) * std::pow(p.n_electrons, 2) * std::pow(ntot, 3) * p.t /
                            (p.delta * p.gamma * p.eps) * (ntot * ntot + p.eta / std::sqrt(p.eps)) +
                        p.n_electrons * std::pow(ntot, 4) / (p.eps * p.eps)) *
                           std::log(1.0 / p.xi),
                       true};
  return {ours, prior};
}

std::string CostReport::to_markdown() const {
  std::ostringstream os;
  os << "| figure | value | formula | scaling-only |\n|---|---|---|---|\n";
  for (const auto& f : figures) {
    os << "| " << f.name << " | " << fmt_sci(f.value) << " | " << f.formula << " | "
       << (f.scaling_only ? "yes" : "no") << " |\n";
  }
  return os.str();
}

std::string CostReport::to_csv() const {
  std::ostringstream os;
  os << "figure,value,formula,scaling_only\n";
  for (const auto& f : figures) {
    os << f.name << "," << fmt_sci(f.value) << ",\"" << f.formula << "\"," << (f.scaling_only ? 1 : 0) << "\n";
  }
  return os.str();
}

CostReport standard_report(double alpha, double t, double eps, double lambda, double delta, double gamma,
                           double eps_prep, const Table1Params& t1) {
  CostReport rep;
  rep.figures.push_back({"hamsim_queries", "ceil(6*alpha*|t| + 9*ln(12/eps))",
                         static_cast<double>(hamsim_cost(alpha, t, eps)), false});
  rep.figures.push_back({"angleless_hamsim_queries", "ceil(48*alpha*|t| + 72*ln(48*(1+sqrt2)/eps) - 6)",
                         static_cast<double>(angleless_hamsim_cost(alpha, t, eps)), false});
  auto gsp = gsp_cost(lambda, delta, gamma, eps_prep);
  rep.figures.push_back(gsp.queries_uh);
  rep.figures.push_back(gsp.queries_ui);
  auto [ours, prior] = table1_compare(t1);
  rep.figures.push_back(ours.simulation);
  rep.figures.push_back(ours.free_energy);
  rep.figures.push_back(prior.simulation);
  rep.figures.push_back(prior.free_energy);
  return rep;
}

}  // namespace cost
}  // namespace liouv
