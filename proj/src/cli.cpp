#include "prereq/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "prereq/csv.hpp"
#include "prereq/error.hpp"
#include "prereq/pipeline.hpp"

extern char** environ;

namespace prereq::cli {

namespace {

constexpr const char* kStage = "config";
constexpr const char* kEnvPrefix = "PREREQ_";

// Long flag names that can also come from the environment.
const std::vector<std::string>& env_flags() {
  static const std::vector<std::string> flags{"hierarchy", "grades",   "s1",     "s2",      "s3",
                                              "alpha-min", "g-max",    "missing-policy", "out", "format",
                                              "decimals",  "seed",     "cohort"};
  return flags;
}

std::string env_name(const std::string& flag) {
  std::string name = kEnvPrefix;
  for (char c : flag) name.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return name;
}

[[noreturn]] void fail(const std::string& flag, const std::string& message) {
  throw Error(kStage, "--" + flag + ": " + message);
}

void require_readable(const std::string& flag, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(flag, "cannot read '" + path.string() + "'");
}

Edge parse_edge_arg(const std::string& text) {
  for (std::string_view sep : {"→", "->", ":"}) {
    auto pos = text.find(sep);
    if (pos != std::string::npos && pos > 0 && pos + sep.size() < text.size())
      return {text.substr(0, pos), text.substr(pos + sep.size())};
  }
  fail("reverse", "expected FROM:TO, got '" + text + "'");
}

Formats parse_formats(const std::vector<std::string>& items) {
  Formats f{false, false, false};
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      auto p = std::string(csv::trim(part));
      if (p == "json")
        f.json = true;
      else if (p == "dot")
        f.dot = true;
      else if (p == "csv")
        f.csv = true;
      else if (!p.empty())
        fail("format", "unknown format '" + p + "' (expected json, dot, csv)");
    }
  }
  return f;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("report", "cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error("report", "failed writing '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path, const char* stage) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(stage, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GradeMatrix load_grade_file(const Config& c) {
  std::ifstream in(c.grades_path, std::ios::binary);
  if (!in) throw Error("grades", "cannot open '" + c.grades_path.string() + "'");
  return load_grades(in, c.settings.g_max, c.settings.missing_policy);
}

void report_warnings(const std::vector<std::string>& warnings, std::ostream& diag) {
  for (const auto& w : warnings) diag << "warning: " << w << "\n";
}

}  // namespace

Environment process_environment() {
  Environment env;
  for (char** e = environ; e && *e; ++e) {
    std::string_view entry(*e);
    if (entry.rfind(kEnvPrefix, 0) != 0) continue;
    auto eq = entry.find('=');
    if (eq == std::string_view::npos) continue;
    env.emplace(std::string(entry.substr(0, eq)), std::string(entry.substr(eq + 1)));
  }
  return env;
}

Config parse_config(const std::vector<std::string>& args, const Environment& env) {
  if (args.empty()) throw Error(kStage, "missing subcommand (refine, simulate or validate)");

  Config c;
  std::string hierarchy, grades, out, policy = "STRICT", cohort;
  std::vector<std::string> formats, reverse;
  double s1 = c.settings.thresholds.s1, s2 = c.settings.thresholds.s2, s3 = c.settings.thresholds.s3;
  double alpha = c.settings.decision.alpha_min, g_max = c.settings.g_max;
  int decimals = c.settings.decimals;
  std::uint64_t seed = 0;

  CLI::App app{"Refines an expert prerequisite hierarchy from cohort grades", "prereq-refiner"};
  app.require_subcommand(1, 1);
  auto* refine = app.add_subcommand("refine", "run the full refinement pipeline");
  auto* simulate = app.add_subcommand("simulate", "recover a perturbed hierarchy from a synthetic cohort");
  auto* validate = app.add_subcommand("validate", "parse and validate the inputs only");

  for (auto* sub : {refine, simulate, validate}) {
    sub->add_option("--hierarchy", hierarchy, "hierarchy file (.json or from,to CSV)");
    sub->add_option("--s1", s1, "lower CPR threshold (< 0)");
    sub->add_option("--s2", s2, "CPR/RPR crossover threshold (> 0)");
    sub->add_option("--s3", s3, "upper RPR threshold (> s2)");
    sub->add_option("--alpha-min", alpha, "minimum relevance to keep a link, in (0, 1]");
    sub->add_option("--g-max", g_max, "maximum attainable grade");
    sub->add_option("--missing-policy", policy, "STRICT or SKIP");
    sub->add_option("--decimals", decimals, "decimals in rounded report values");
    if (sub != simulate) sub->add_option("--grades", grades, "grade CSV (learner,<skill>...)");
    if (sub != validate) {
      sub->add_option("--out", out, "output directory");
      sub->add_option("--format", formats, "comma separated subset of json,dot,csv");
      sub->add_flag("--include-deleted", c.include_deleted, "draw deleted links dashed in final.dot");
    }
    if (sub == simulate) {
      sub->add_option("--seed", seed, "cohort seed (overrides the cohort file)");
      sub->add_option("--cohort", cohort, "cohort spec JSON");
      sub->add_option("--reverse", reverse, "truth edge FROM:TO the expert got backwards (repeatable)");
    }
    for (auto* opt : sub->get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    if (auto* f = sub->get_option_no_throw("--format")) f->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    if (auto* r = sub->get_option_no_throw("--reverse")) r->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  }

  // Environment values go in front of the user's flags; TakeLast lets flags win.
  std::vector<std::string> full{args.front()};
  CLI::App* chosen = nullptr;
  for (auto* sub : {refine, simulate, validate})
    if (sub->get_name() == args.front()) chosen = sub;
  if (chosen) {
    for (const auto& flag : env_flags()) {
      auto it = env.find(env_name(flag));
      if (it == env.end() || !chosen->get_option_no_throw("--" + flag)) continue;
      full.push_back("--" + flag + "=" + it->second);
    }
  }
  full.insert(full.end(), args.begin() + 1, args.end());
  std::reverse(full.begin(), full.end());

  try {
    app.parse(full);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{chosen ? chosen->help() : app.help()};
  } catch (const CLI::ParseError& e) {
    throw Error(kStage, e.what());
  }

  auto given = [&](const char* flag) {
    auto* opt = chosen->get_option_no_throw(flag);
    return opt && opt->count() > 0;
  };

  c.command = chosen == refine ? Command::refine : chosen == simulate ? Command::simulate : Command::validate;
  c.settings.thresholds = {s1, s2, s3};
  c.settings.decision.alpha_min = alpha;
  c.settings.g_max = g_max;
  c.settings.decimals = decimals;

  if (!(s1 < 0.0)) fail("s1", "s1 must be negative");
  if (!(s2 > 0.0)) fail("s2", "s2 must be positive");
  if (!(s3 > s2)) fail("s3", "s3 must exceed s2");
  if (!(alpha > 0.0 && alpha <= 1.0)) fail("alpha-min", "alpha_min must lie in (0, 1]");
  if (!(g_max > 0.0) || !std::isfinite(g_max)) fail("g-max", "g_max must be positive");
  if (decimals < 0 || decimals > 12) fail("decimals", "decimals must be between 0 and 12");
  try {
    c.settings.missing_policy = parse_missing_policy(policy);
  } catch (const Error& e) {
    fail("missing-policy", e.what());
  }

  if (hierarchy.empty()) fail("hierarchy", "required");
  c.hierarchy_path = hierarchy;
  require_readable("hierarchy", c.hierarchy_path);
  if (c.command == Command::refine && grades.empty()) fail("grades", "required");
  if (!grades.empty()) {
    c.grades_path = grades;
    require_readable("grades", c.grades_path);
  }
  if (!out.empty()) {
    c.output_dir = out;
    c.output_dir_given = true;
  }
  if (given("--format")) c.formats = parse_formats(formats);
  if (!cohort.empty()) {
    c.cohort_path = std::filesystem::path(cohort);
    require_readable("cohort", *c.cohort_path);
  }
  if (given("--seed")) c.seed = seed;
  for (const auto& r : reverse) c.reverse.push_back(parse_edge_arg(r));
  return c;
}

int run_pipeline(const Config& c, std::ostream& diag) {
  try {
    const auto hierarchy = load_hierarchy(c.hierarchy_path);
    const auto grades = load_grade_file(c);
    auto settings = c.settings;
    const auto artifacts = run_refinement(hierarchy, grades, settings);

    std::filesystem::create_directories(c.output_dir);
    if (c.formats.json) write_file(c.output_dir / "report.json", render_report(artifacts));
    if (c.formats.dot)
      write_file(c.output_dir / "final.dot",
                 render_dot(artifacts.final_hierarchy, {c.settings.decimals, c.include_deleted}));
    if (c.formats.csv) {
      auto t = render_tables(artifacts);
      write_file(c.output_dir / "delta.csv", t.delta);
      write_file(c.output_dir / "fuzzy_cpr.csv", t.fuzzy_cpr);
      write_file(c.output_dir / "fuzzy_rpr.csv", t.fuzzy_rpr);
      write_file(c.output_dir / "averages.csv", t.averages);
      write_file(c.output_dir / "decisions.csv", t.decisions);
    }
    report_warnings(artifacts.warnings, diag);
    return artifacts.warnings.empty() ? kExitOk : kExitWarnings;
  } catch (const Error& e) {
    diag << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int run_validate(const Config& c, std::ostream& out, std::ostream& diag) {
  try {
    const auto hierarchy = load_hierarchy(c.hierarchy_path);
    out << "hierarchy: " << hierarchy.skills().size() << " skills, " << hierarchy.edges().size() << " edges\n";
    if (!c.grades_path.empty()) {
      const auto grades = load_grade_file(c);
      out << "grades: " << grades.learner_count() << " learners, " << grades.skill_count() << " skills\n";
      delta_grades(grades, hierarchy, kernels::scalar());
      out << "grades match hierarchy skills\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitError;
  }
}

std::string recovery_to_json(const CohortSpec& spec, const std::vector<Edge>& reversed, const RecoveryStats& stats,
                             const std::vector<EdgeDecision>& decisions) {
  using ordered_json = nlohmann::ordered_json;
  constexpr Verdict kAll[] = {Verdict::kept, Verdict::reversed, Verdict::deleted};
  auto number_or_null = [](double v) { return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v); };

  ordered_json doc;
  doc["schema"] = "prereq-refiner/recovery/1";
  doc["cohort"] = ordered_json::parse(cohort_spec_to_json(spec));
  ordered_json rev = ordered_json::array();
  for (const auto& e : reversed) rev.push_back(to_string(e));
  doc["reversed"] = std::move(rev);

  ordered_json s;
  s["evaluated"] = stats.evaluated;
  s["accuracy"] = number_or_null(stats.accuracy);
  ordered_json confusion, precision, recall;
  for (auto t : kAll) {
    ordered_json row;
    for (auto p : kAll)
      row[std::string(to_string(p))] = stats.confusion[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
    confusion[std::string(to_string(t))] = std::move(row);
    precision[std::string(to_string(t))] = number_or_null(stats.precision[static_cast<std::size_t>(t)]);
    recall[std::string(to_string(t))] = number_or_null(stats.recall[static_cast<std::size_t>(t)]);
  }
  s["confusion"] = std::move(confusion);
  s["precision"] = std::move(precision);
  s["recall"] = std::move(recall);
  doc["stats"] = std::move(s);

  ordered_json ds = ordered_json::array();
  for (const auto& d : decisions) {
    ordered_json j;
    j["edge"] = to_string(d.original);
    j["verdict"] = std::string(to_string(d.verdict));
    j["relevance"] = d.relevance;
    j["avg_cpr"] = d.avg_cpr;
    j["avg_rpr"] = d.avg_rpr;
    ds.push_back(std::move(j));
  }
  doc["decisions"] = std::move(ds);
  return doc.dump(2) + "\n";
}

int run_simulation(const Config& c, std::ostream& out, std::ostream& diag) {
  try {
    const auto truth = load_hierarchy(c.hierarchy_path);
    CohortSpec spec;
    if (c.cohort_path) spec = parse_cohort_spec(read_file(*c.cohort_path, "simulator"));
    if (c.seed) spec.seed = *c.seed;

    const auto expert = perturb_hierarchy(truth, c.reverse);
    const auto cohort = generate_cohort(truth, spec, c.settings.thresholds, c.settings.g_max);
    const auto artifacts = run_refinement(expert, cohort, c.settings);
    const auto stats = evaluate_recovery(expected_verdicts(expert, c.reverse), artifacts.decisions);
    const auto json = recovery_to_json(spec, c.reverse, stats, artifacts.decisions);

    out << json;
    if (c.output_dir_given) {
      std::filesystem::create_directories(c.output_dir);
      write_file(c.output_dir / "recovery.json", json);
      std::ostringstream grades;
      write_grades(grades, cohort);
      write_file(c.output_dir / "cohort.csv", grades.str());
      write_file(c.output_dir / "expert_hierarchy.json", hierarchy_to_json(expert));
    }
    report_warnings(artifacts.warnings, diag);
    return artifacts.warnings.empty() ? kExitOk : kExitWarnings;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int main_entry(const std::vector<std::string>& args, const Environment& env, std::ostream& out, std::ostream& diag) {
  Config c;
  try {
    c = parse_config(args, env);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kExitOk;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitError;
  }
  switch (c.command) {
    case Command::refine:
      return run_pipeline(c, diag);
    case Command::simulate:
      return run_simulation(c, out, diag);
    case Command::validate:
      return run_validate(c, out, diag);
  }
  return kExitError;
}

}  // namespace prereq::cli
