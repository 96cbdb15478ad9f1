#include "cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "crp/balance.h"
#include "crp/capacity.h"
#include "crp/document.h"
#include "crp/render.h"
#include "crp/service.h"
#include "crp/simplex.h"
#include "crp/vsm.h"

namespace crp::cli {
namespace {

struct Options {
  std::string format = "table";
  std::string file;
  std::string future_file;
  int64_t target = 0;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string snapshot;
  std::string ui_dir;
  bool allow_dev_origin = false;
};

std::optional<LineDocument> Load(const std::string& path, std::ostream& err) {
  ParsedDocument parsed = LoadLineDocument(path);
  if (parsed.ok()) return std::move(parsed.document);
  for (const DocumentError& e : parsed.errors) {
    err << "error: " << e.ToString() << "\n";
  }
  return std::nullopt;
}

bool WantsJson(const Options& o) { return o.format == "json"; }

int Validate(const Options& o, std::ostream& out, std::ostream& err) {
  if (!Load(o.file, err)) return kExitInvalid;
  out << o.file << ": ok\n";
  return kExitOk;
}

int Capacity(const Options& o, std::ostream& out, std::ostream& err) {
  auto doc = Load(o.file, err);
  if (!doc) return kExitInvalid;
  const CapacityReport report = AnalyzeCapacity(doc->line);
  if (WantsJson(o)) {
    out << CapacityReportToJson(report).dump(2) << "\n";
  } else {
    out << RenderCapacityTable(doc->line, report);
  }
  return kExitOk;
}

int Balance(const Options& o, std::ostream& out, std::ostream& err) {
  auto doc = Load(o.file, err);
  if (!doc) return kExitInvalid;
  BalancePolicy policy = doc->balance_policy
                             ? *doc->balance_policy
                             : DefaultPolicy(doc->line, o.target);
  policy.target_throughput = o.target;
  auto plan = BalanceLine(doc->line, policy);
  if (!plan.ok()) {
    err << "error: " << plan.status().message() << "\n";
    return kExitInvalid;
  }
  if (WantsJson(o)) {
    crp::Json j = BalancePlanToJson(*plan);
    j["target_throughput"] = o.target;
    out << j.dump(2) << "\n";
  } else {
    out << RenderBalancePlan(*plan, o.target);
  }
  return kExitOk;
}

int Lp(const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream in(o.file);
  if (!in) {
    err << "error: " << o.file << ": cannot open file\n";
    return kExitInvalid;
  }
  std::stringstream text;
  text << in.rdbuf();

  // A bare LP problem is solved as is; a line document yields its capacity LP.
  std::optional<LpProblem> problem;
  std::optional<CrpLinearProgram> crp_lp;
  std::optional<LineDocument> doc;
  try {
    crp::Json raw = crp::Json::parse(text.str());
    if (raw.is_object() && raw.contains("constraint_matrix")) {
      auto parsed = LpProblemFromJson(raw);
      if (!parsed.ok()) {
        err << "error: " << o.file << ": " << parsed.status().message() << "\n";
        return kExitInvalid;
      }
      problem = *std::move(parsed);
    }
  } catch (const crp::Json::parse_error&) {
    // Fall through; Load() reports the syntax error with its location.
  }
  if (!problem) {
    doc = Load(o.file, err);
    if (!doc) return kExitInvalid;
    std::vector<StyleRouting> styles = doc->line.styles;
    if (styles.empty()) styles.push_back(CycleTimeStyle(doc->line));
    auto lp = BuildCrpLp(doc->line, styles);
    if (!lp.ok()) {
      err << "error: " << lp.status().message() << "\n";
      return kExitInvalid;
    }
    problem = lp->problem;
    crp_lp = *std::move(lp);
  }

  auto solution = Solve(*problem);
  if (!solution.ok()) {
    err << "error: " << solution.status().message() << "\n";
    return kExitInvalid;
  }
  std::optional<std::string> limiting;
  if (crp_lp) {
    if (auto row = LimitingRow(*crp_lp, doc->line, *solution)) {
      limiting = problem->constraint_labels[*row];
    }
  }
  if (WantsJson(o)) {
    crp::Json j;
    j["problem"] = LpProblemToJson(*problem);
    j["solution"] = LpSolutionToJson(*solution);
    j["limiting_constraint"] = limiting ? crp::Json(*limiting)
                                        : crp::Json(nullptr);
    out << j.dump(2) << "\n";
  } else {
    out << RenderLp(*problem, *solution);
    if (limiting) out << "limiting: " << *limiting << "\n";
  }
  return kExitOk;
}

int Vsm(const Options& o, std::ostream& out, std::ostream& err) {
  auto doc = Load(o.file, err);
  if (!doc) return kExitInvalid;
  if (!doc->vsm_map) {
    err << "error: " << o.file << ": document has no vsm_map\n";
    return kExitInvalid;
  }
  auto breakdown = AnalyzeLeadTime(*doc->vsm_map);
  if (!breakdown.ok()) {
    err << "error: " << breakdown.status().message() << "\n";
    return kExitInvalid;
  }
  if (WantsJson(o)) {
    out << LeadTimeToJson(*breakdown).dump(2) << "\n";
  } else {
    out << RenderLeadTime(*breakdown);
  }
  return kExitOk;
}

int Compare(const Options& o, std::ostream& out, std::ostream& err) {
  auto current = Load(o.file, err);
  auto future = Load(o.future_file, err);
  if (!current || !future) return kExitInvalid;

  const CapacityReport cap_current = AnalyzeCapacity(current->line);
  const CapacityReport cap_future = AnalyzeCapacity(future->line);
  std::optional<StateComparison> vsm;
  if (current->vsm_map && future->vsm_map) {
    auto cmp = CompareStates(*current->vsm_map, *future->vsm_map);
    if (!cmp.ok()) {
      err << "error: " << cmp.status().message() << "\n";
      return kExitInvalid;
    }
    vsm = *cmp;
  }
  auto bottleneck_name = [](const LineDocument& doc,
                            const CapacityReport& report) {
    const Workstation* ws = doc.line.Find(report.bottleneck().station_id);
    return ws->name.empty() ? ws->id : ws->name;
  };
  if (WantsJson(o)) {
    crp::Json j;
    j["capacity"] = {
        {"fg_current", cap_current.fg_throughput},
        {"fg_future", cap_future.fg_throughput},
        {"bottleneck_current", cap_current.bottleneck().station_id},
        {"bottleneck_future", cap_future.bottleneck().station_id}};
    j["vsm"] = vsm ? StateComparisonToJson(*vsm) : crp::Json(nullptr);
    out << j.dump(2) << "\n";
  } else {
    out << "FG output current (pcs): " << cap_current.fg_throughput
        << " (bottleneck: " << bottleneck_name(*current, cap_current) << ")\n"
        << "FG output future (pcs): " << cap_future.fg_throughput
        << " (bottleneck: " << bottleneck_name(*future, cap_future) << ")\n";
    if (vsm) {
      out << RenderComparison(*vsm);
    } else {
      out << "VSM: not present in both documents\n";
    }
  }
  return kExitOk;
}

int Serve(const Options& o, std::ostream& err) {
  auto doc = Load(o.file, err);
  if (!doc) return kExitInvalid;
  ScenarioStore store(*std::move(doc), o.snapshot);
  PlanningServer server(store, {o.allow_dev_origin, o.ui_dir});
  const int port = server.Bind(o.host, o.port);
  if (port < 0) {
    err << "error: cannot bind " << o.host << ":" << o.port << "\n";
    return kExitInvalid;
  }
  err << "listening on http://" << o.host << ":" << port << "\n";
  err.flush();
  return server.Listen() ? kExitOk : kExitInvalid;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Capacity requirement planning and line balancing"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"table", "json"}));
  };

  auto* validate = app.add_subcommand("validate", "Check a line document");
  validate->add_option("file", o.file)->required();

  auto* capacity = app.add_subcommand("capacity", "Print the capacity table");
  capacity->add_option("file", o.file)->required();
  add_format(capacity);

  auto* balance = app.add_subcommand("balance", "Plan capacity increments");
  balance->add_option("file", o.file)->required();
  balance->add_option("--target", o.target, "Target FG output (pcs/day)")
      ->required()
      ->check(CLI::PositiveNumber);
  add_format(balance);

  auto* lp = app.add_subcommand("lp", "Build and solve the capacity LP");
  lp->add_option("file", o.file)->required();
  add_format(lp);

  auto* vsm = app.add_subcommand("vsm", "Value stream lead time metrics");
  vsm->add_option("file", o.file)->required();
  add_format(vsm);

  auto* compare = app.add_subcommand("compare", "Compare two line states");
  compare->add_option("current", o.file)->required();
  compare->add_option("future", o.future_file)->required();
  add_format(compare);

  auto* serve = app.add_subcommand("serve", "Run the planning HTTP service");
  serve->add_option("--port", o.port)->required();
  serve->add_option("--line", o.file)->required();
  serve->add_option("--host", o.host);
  serve->add_option("--snapshot", o.snapshot, "Write store state on change");
  serve->add_option("--ui-dir", o.ui_dir, "Static UI assets served at /");
  serve->add_flag("--allow-dev-origin", o.allow_dev_origin,
                  "Send permissive CORS headers");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  if (validate->parsed()) return Validate(o, out, err);
  if (capacity->parsed()) return Capacity(o, out, err);
  if (balance->parsed()) return Balance(o, out, err);
  if (lp->parsed()) return Lp(o, out, err);
  if (vsm->parsed()) return Vsm(o, out, err);
  if (compare->parsed()) return Compare(o, out, err);
  if (serve->parsed()) return Serve(o, err);
  return kExitUsage;
}

}  // namespace crp::cli
