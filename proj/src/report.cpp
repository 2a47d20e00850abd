#include "samplab/report.hpp"

#include "samplab/io.hpp"

namespace samplab {

using nlohmann::json;

namespace {

json grid_json(const GridSpec& grid) {
  json out;
  out["dim"] = grid.dim;
  out["n"] = grid.n;
  out["weights"] = grid.weight_name;
  return out;
}

}  // namespace

std::string ordering_csv(const LabReport& report) {
  CsvBuilder csv({"f_id", "qf_M", "qf_U", "qf_H", "qf_S", "margin_MU", "margin_UH",
                  "margin_US"});
  for (const OrderingRow& row : report.rows) {
    csv.add_row({row.f_id, format_g17(row.qf_M), format_g17(row.qf_U),
                 format_g17(row.qf_H), format_g17(row.qf_S), format_g17(row.margin_MU),
                 format_g17(row.margin_UH), format_g17(row.margin_US)});
  }
  return csv.str();
}

json lab_summary_json(const LabReport& report, const ConsequenceReport& consequences,
                      const GridSpec& grid, int w) {
  json out;
  out["grid"] = grid_json(grid);
  out["proposal_half_width"] = w;
  if (!report.note.empty()) out["note"] = report.note;
  out["ordering"]["min_margin_MU"] = report.min_margin_MU;
  out["ordering"]["min_margin_UH"] = report.min_margin_UH;
  out["ordering"]["min_margin_US"] = report.min_margin_US;
  out["ordering"]["slack"] = report.slack;
  out["ordering"]["num_functions"] = report.rows.size();
  out["ordering"]["verdict"] = report.pass ? "PASS" : "FAIL";
  out["consequences"]["gap"] = consequences.gap;
  out["consequences"]["conductance"] = consequences.conductance;
  out["consequences"]["conductance_mode"] = consequences.conductance_mode;
  out["consequences"]["gap_ordering"] = consequences.gap_ordering_pass ? "PASS" : "FAIL";
  out["consequences"]["conductance_ordering"] =
      consequences.conductance_ordering_pass ? "PASS" : "FAIL";
  out["verdict"] = (report.pass && consequences.pass) ? "PASS" : "FAIL";
  return out;
}

json representation_checks_json(const std::string& pair, const GridSpec& grid,
                                const std::vector<CheckReport>& checks) {
  json out;
  out["pair"] = pair;
  out["grid"] = grid_json(grid);
  out["checks"] = json::array();
  bool all = true;
  for (const CheckReport& check : checks) {
    json c;
    c["check"] = check.check;
    c["per_fiber_residuals"] = check.per_fiber;
    c["worst"] = check.worst;
    c["tolerance"] = check.tolerance;
    c["verdict"] = check.pass ? "PASS" : "FAIL";
    all = all && check.pass;
    out["checks"].push_back(std::move(c));
  }
  out["verdict"] = all ? "PASS" : "FAIL";
  return out;
}

std::string compare_csv(const CompareReport& report) {
  CsvBuilder csv({"f_id", "qf_M", "qf_U", "qf_H", "qf_S", "margin_MU", "margin_UH",
                  "margin_US", "stderr_M", "stderr_U", "stderr_H", "stderr_S",
                  "stderr_MU", "stderr_UH", "stderr_US"});
  for (const CompareRow& row : report.rows) {
    csv.add_row({row.f_id, format_g17(row.qf_M.estimate), format_g17(row.qf_U.estimate),
                 format_g17(row.qf_H.estimate), format_g17(row.qf_S.estimate),
                 format_g17(row.mu.margin), format_g17(row.uh.margin),
                 format_g17(row.us.margin), format_g17(row.qf_M.se),
                 format_g17(row.qf_U.se), format_g17(row.qf_H.se),
                 format_g17(row.qf_S.se), format_g17(row.mu.se), format_g17(row.uh.se),
                 format_g17(row.us.se)});
  }
  return csv.str();
}

json compare_summary_json(const CompareReport& report) {
  json out;
  out["n_pairs"] = report.n_pairs;
  out["rows"] = json::array();
  for (const CompareRow& row : report.rows) {
    json r;
    r["f_id"] = row.f_id;
    for (const auto& [est, name] :
         {std::pair{&row.qf_M, "M"}, std::pair{&row.qf_U, "U"},
          std::pair{&row.qf_H, "H"}, std::pair{&row.qf_S, "S"}}) {
      r["one_step_form"][name]["estimate"] = est->estimate;
      r["one_step_form"][name]["stderr"] = est->se;
    }
    for (const PairedMargin* pm : {&row.mu, &row.uh, &row.us}) {
      r["margins"][pm->pair]["margin"] = pm->margin;
      r["margins"][pm->pair]["stderr"] = pm->se;
      r["margins"][pm->pair]["verdict"] = verdict_name(pm->verdict);
    }
    out["rows"].push_back(std::move(r));
  }
  if (!report.mse_rows.empty()) {
    out["mse"]["chain_length"] = report.mse_chain_length;
    out["mse"]["replications"] = report.mse_replications;
    out["mse"]["rows"] = json::array();
    for (const MseRow& row : report.mse_rows) {
      json r;
      r["f_id"] = row.f_id;
      r["pair"] = row.pair;
      r["mse_larger"]["estimate"] = row.mse_larger.estimate;
      r["mse_larger"]["stderr"] = row.mse_larger.se;
      r["mse_smaller"]["estimate"] = row.mse_smaller.estimate;
      r["mse_smaller"]["stderr"] = row.mse_smaller.se;
      r["margin"] = row.diff.margin;
      r["stderr"] = row.diff.se;
      r["verdict"] = verdict_name(row.diff.verdict);
      out["mse"]["rows"].push_back(std::move(r));
    }
  }
  out["inconclusive_count"] = report.inconclusive_count;
  out["verdict"] = report.any_fail ? "FAIL" : "PASS";
  return out;
}

}  // namespace samplab
