// cost.hpp — analytic resource model: exact query-count formulas and
// scaling-only expressions with unit constants.
#pragma once

#include <string>
#include <vector>

#include "liouv/common.hpp"

namespace liouv {
namespace cost {

struct Figure {
  std::string name;
  std::string formula;  // the printed expression the number evaluates
  double value = 0;
  bool scaling_only = false;  // hidden constants set to one
};

// ceil(6 alpha |t| + 9 ln(12/eps)) — exact.
long hamsim_cost(double alpha, double t, double eps);

// ceil(48 alpha |t| + 72 ln(48(1+sqrt2)/eps) - 6) — exact.
long angleless_hamsim_cost(double alpha, double t, double eps);

struct GspCost {
  Figure queries_uh;  // (lambda/(delta gamma)) log(1/(delta eps_prep)), unit constants
  Figure queries_ui;  // 1/delta, unit constants
};
GspCost gsp_cost(double lambda, double delta, double gamma, double eps_prep);

struct Table1Params {
  double n_nuclei = 1, n_electrons = 1, t = 1, eps = 1e-3, delta = 0.5, gamma = 0.5, eta = 64, xi = 0.05;
};
struct Table1Row {
  Figure simulation;
  Figure free_energy;
};
// "this work" and the prior-route rows, evaluated with unit constants and
// o(1) exponents dropped (symbolic in the formula strings).
std::pair<Table1Row, Table1Row> table1_compare(const Table1Params& p);

struct CostReport {
  std::vector<Figure> figures;
  std::string to_markdown() const;
  std::string to_csv() const;
};

CostReport standard_report(double alpha, double t, double eps, double lambda, double delta, double gamma,
                           double eps_prep, const Table1Params& t1);

}  // namespace cost
}  // namespace liouv
