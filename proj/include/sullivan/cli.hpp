#pragma once

// Command-line front end. Every command builds a JSON document; the text
// output is rendered from that document alone.
//
// Exit codes: 0 pass, 2 usage, 3 invalid model, 4 theorem verdict failure,
// 5 internal invariant breach.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sullivan/library.hpp"
#include "sullivan/random_model.hpp"
#include "sullivan/sequences.hpp"
#include "sullivan/verifiers.hpp"

namespace sullivan {

enum ExitCode : int { kPass = 0, kUsage = 2, kInvalidModel = 3, kVerdictFailure = 4, kInternal = 5 };

struct ModelSource {
  std::string text;
  std::string origin;
  SullivanModel model;
};

struct CliOptions {
  std::string model_path;
  std::string lib;
  std::optional<std::uint64_t> seed;
  std::optional<int> window;
  std::string format = "text";
  std::string out;
  bool no_timestamp = false;
};

namespace cli {

inline ModelSource load_model(const CliOptions& o) {
  const int given = int(!o.model_path.empty()) + int(!o.lib.empty()) + int(o.seed.has_value());
  if (given != 1) throw UsageError("give exactly one of --model, --lib, --seed");
  ModelSource src;
  if (!o.model_path.empty()) {
    std::ifstream in(o.model_path);
    if (!in) throw UsageError("cannot read model file " + o.model_path);
    std::stringstream ss;
    ss << in.rdbuf();
    src.text = ss.str();
    src.origin = "file:" + o.model_path;
    src.model = parse_model(src.text, o.model_path);
  } else if (!o.lib.empty()) {
    src.model = library_model(o.lib);
    src.text = print_model(src.model);
    src.origin = "library:" + o.lib;
  } else {
    src.model = random_elliptic_model(*o.seed, random_shape(*o.seed));
    src.text = print_model(src.model);
    src.origin = "generated:seed=" + std::to_string(*o.seed);
  }
  return src;
}

inline json model_json(const ModelSource& src) {
  json gens = json::array();
  for (const auto& g : src.model.generators()) gens.push_back({{"name", g.name}, {"degree", g.degree}});
  return {{"name", src.model.name()},
          {"origin", src.origin},
          {"generators", gens},
          {"profile", length_profile(src.model).describe()},
          {"text", src.text}};
}

inline json certificate_json(const EllipticityCertificate& c) {
  json j = {{"status", c.status_name()},
            {"formal_dimension", c.formal_dimension},
            {"window", c.window},
            {"reason", c.reason},
            {"heuristic", c.heuristic}};
  if (c.witness_degree) j["witness_degree"] = *c.witness_degree;
  return j;
}

inline json report_json(const VerificationReport& r) {
  return {{"theorem", r.theorem},
          {"model", r.model},
          {"verdict", to_string(r.verdict)},
          {"reason", r.reason},
          {"witnesses", r.witnesses},
          {"derived", r.derived}};
}

inline json les_json(const LesReport& rep) {
  json failures = json::array();
  for (const auto& f : rep.failures)
    failures.push_back({{"node", f.node}, {"reason", f.reason}, {"witness", vector_json(f.witness)}});
  json isos = json::array();
  for (const auto& c : rep.isomorphisms) isos.push_back({{"map", c.description}, {"holds", c.holds}});
  std::size_t ses_ok = 0;
  json ses_bad = json::array();
  for (const auto& c : rep.short_exact) {
    if (c.holds) ++ses_ok;
    else ses_bad.push_back(c.description);
  }
  json j = {{"kind", to_string(rep.kind)},
            {"graded", rep.graded},
            {"first_generator_degree", rep.first_degree},
            {"window_degree", rep.window_degree},
            {"nodes_checked", rep.nodes_checked},
            {"nonzero_nodes", rep.nonzero_nodes},
            {"exact", rep.exact()},
            {"failures", failures},
            {"N", rep.N},
            {"M", rep.M},
            {"formal_dimension_relation", rep.formal_dimension_relation.value_or(false)},
            {"isomorphisms", isos}};
  if (rep.graded) j["window_length"] = rep.window_length;
  if (rep.kind == SequenceKind::Wang) j["short_exact"] = {{"holds", ses_ok}, {"fails", ses_bad}};
  j["verdict"] = rep.all_pass() ? "pass" : "fail";
  return j;
}

inline std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

inline bool all_scalars(const json& a) {
  for (const auto& x : a)
    if (x.is_structured()) return false;
  return true;
}

inline void render(std::ostream& os, const json& j, int indent) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (!v.is_structured()) {
        const std::string s = scalar_text(v);
        if (s.find('\n') != std::string::npos) {
          os << pad << k << ":\n";
          std::istringstream lines(s);
          for (std::string line; std::getline(lines, line);) os << pad << "  | " << line << "\n";
        } else {
          os << pad << k << ": " << s << "\n";
        }
      } else if (v.is_array() && all_scalars(v)) {
        os << pad << k << ": [";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar_text(v[i]);
        os << "]\n";
      } else if (v.empty()) {
        os << pad << k << ": " << (v.is_array() ? "[]" : "{}") << "\n";
      } else {
        os << pad << k << ":\n";
        render(os, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (!v.is_structured()) {
        os << pad << "- " << scalar_text(v) << "\n";
      } else if (v.is_array() && all_scalars(v)) {
        os << pad << "- [";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar_text(v[i]);
        os << "]\n";
      } else {
        os << pad << "-\n";
        render(os, v, indent + 2);
      }
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

inline std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline int exit_for(const json& doc) {
  if (doc.contains("verdict") && doc["verdict"] == "fail") return kVerdictFailure;
  return kPass;
}

}  // namespace cli

/// Runs one command line (without the program name). Output goes to `out`
/// unless --out is given; diagnostics go to `err`.
inline int run_command(const std::vector<std::string>& args, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  CLI::App app{"Rational cohomology and Toomer invariants of minimal Sullivan algebras", "sullivan"};
  app.require_subcommand(1);
  CliOptions o;
  std::string theorem;
  std::string library_action;
  std::string library_name;
  int count = 20;
  bool mixed = false;
  bool with_library = false;

  auto add_common = [&](CLI::App* sub, bool with_model) {
    if (with_model) {
      sub->add_option("--model", o.model_path, "model file (.sul)");
      sub->add_option("--lib", o.lib, "library model name");
    }
    sub->add_option("--seed", o.seed, "random model seed");
    sub->add_option("--window", o.window, "degrees checked above the formal dimension")->check(CLI::NonNegativeNumber);
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", o.out, "write the report to this path");
    sub->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp field");
  };

  auto* validate_cmd = app.add_subcommand("validate", "check the minimal-algebra conditions");
  auto* cohomology_cmd = app.add_subcommand("cohomology", "Betti numbers and class representatives");
  auto* bigraded_cmd = app.add_subcommand("bigraded", "cohomology by degree and word length");
  auto* toomer_cmd = app.add_subcommand("toomer", "Toomer invariants and their spectrum");
  auto* wang_cmd = app.add_subcommand("wang", "Wang sequence for an odd first generator");
  auto* gysin_cmd = app.add_subcommand("gysin", "Gysin sequence for an even first generator");
  auto* verify_cmd = app.add_subcommand("verify", "run a theorem check, or all of them");
  auto* gap_cmd = app.add_subcommand("gap-scan", "search a random corpus for gaps in the Toomer spectrum");
  auto* library_cmd = app.add_subcommand("library", "list or emit built-in models");
  for (auto* sub : {validate_cmd, cohomology_cmd, bigraded_cmd, toomer_cmd, wang_cmd, gysin_cmd, verify_cmd})
    add_common(sub, true);
  add_common(gap_cmd, false);
  add_common(library_cmd, false);
  verify_cmd->add_option("theorem", theorem, "theorem id or 'all'")->required();
  gap_cmd->add_option("--count", count, "number of random models")->check(CLI::PositiveNumber);
  gap_cmd->add_flag("--mixed", mixed, "draw differentials with mixed word lengths");
  gap_cmd->add_flag("--include-library", with_library, "also scan the library instances");
  library_cmd->add_option("action", library_action, "list or emit")->required()->check(CLI::IsMember({"list", "emit"}));
  library_cmd->add_option("name", library_name, "model to emit");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  json doc;
  int code = kPass;
  try {
    auto* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();
    doc["command"] = cmd;
    if (!o.no_timestamp) doc["timestamp"] = cli::timestamp();

    if (cmd == "library") {
      if (library_action == "list") {
        json entries = json::array();
        for (const auto& e : library_listing()) entries.push_back({{"name", e.name}, {"description", e.description}});
        doc["models"] = entries;
      } else {
        if (library_name.empty()) throw UsageError("library emit needs a model name");
        SullivanModel m = library_model(library_name);
        if (o.format == "text") {
          // Emitted text is itself a model file.
          const std::string text = print_model(m);
          if (o.out.empty()) out << text;
          else std::ofstream(o.out) << text;
          return kPass;
        }
        doc["name"] = library_name;
        doc["text"] = print_model(m);
      }
    } else if (cmd == "gap-scan") {
      std::vector<CorpusEntry> corpus;
      const std::uint64_t base = o.seed.value_or(1);
      for (int i = 0; i < count; ++i) {
        const std::uint64_t s = base + static_cast<std::uint64_t>(i);
        corpus.push_back({random_elliptic_model(s, random_shape(s, mixed)), "generated", s});
      }
      if (with_library)
        for (auto& m : library_instances()) corpus.push_back({m, "library", std::nullopt});
      auto records = gap_scan(corpus);
      json items = json::array();
      std::size_t gaps = 0;
      std::size_t homogeneous_gaps = 0;
      for (const auto& rec : records) {
        json item = {{"model", rec.entry.model.name()},
                     {"origin", rec.entry.origin},
                     {"profile", length_profile(rec.entry.model).describe()},
                     {"certificate", rec.certificate.status_name()}};
        if (rec.entry.seed) item["seed"] = *rec.entry.seed;
        if (rec.report) {
          json spectrum = json::array();
          for (auto m : rec.report->spectrum) spectrum.push_back(m);
          item["e0"] = rec.report->e0_algebra;
          item["spectrum"] = spectrum;
          item["gaps"] = rec.report->gaps;
        }
        if (rec.has_gaps()) {
          ++gaps;
          if (length_profile(rec.entry.model).homogeneous()) ++homogeneous_gaps;
          item["model_text"] = print_model(rec.entry.model);
        }
        items.push_back(item);
      }
      doc["corpus_size"] = records.size();
      doc["models_with_gaps"] = gaps;
      doc["records"] = items;
      doc["verdict"] = homogeneous_gaps == 0 ? "pass" : "fail";
    } else {
      ModelSource src = cli::load_model(o);
      doc["model"] = cli::model_json(src);
      const SullivanModel& model = src.model;

      if (cmd == "validate") {
        doc["valid"] = true;
        doc["formal_dimension_formula"] = formal_dimension_formula(model);
      } else if (cmd == "cohomology") {
        Cohomology engine(model);
        auto cert = certify_elliptic(engine, o.window);
        const int top = std::max(0, cert.formal_dimension) + cert.window;
        auto table = cohomology_table(engine, top);
        json betti = json::array();
        for (auto b : table.betti) betti.push_back(b);
        json reps = json::array();
        for (int i = 0; i <= top; ++i) {
          for (const auto& p : table.representatives[i])
            reps.push_back({{"degree", i}, {"class", format_polynomial(model.algebra(), p)}});
        }
        doc["certificate"] = cli::certificate_json(cert);
        doc["top_degree"] = top;
        doc["betti"] = betti;
        doc["total_dimension"] = table.total;
        doc["euler_characteristic"] = euler_characteristic(engine, top);
        doc["representatives"] = reps;
      } else if (cmd == "bigraded") {
        Cohomology engine(model);
        auto t = bigraded_profile(engine);
        json grid = json::array();
        for (const auto& row : t.h) {
          json r = json::array();
          for (auto v : row) r.push_back(v);
          grid.push_back(r);
        }
        json lengths = json::array();
        for (int k = 0; k <= t.e; ++k) lengths.push_back(t.length_total(k));
        doc["formal_dimension"] = t.formal_dimension;
        doc["e"] = t.e;
        doc["h"] = grid;
        doc["n"] = optional_json(t.n);
        doc["N"] = optional_json(t.N);
        doc["length_dimensions"] = lengths;
      } else if (cmd == "toomer") {
        Cohomology engine(model);
        auto cert = certify_elliptic(engine, o.window);
        doc["certificate"] = cli::certificate_json(cert);
        if (formal_dimension_formula(model) < 0)
          throw PreconditionError("toomer: negative formal dimension; the model is not elliptic");
        auto rep = Toomer(engine).e0_spectrum(cert.certified());
        json spectrum = json::array();
        for (auto m : rep.spectrum) spectrum.push_back(m);
        json classes = json::array();
        for (const auto& c : rep.classes)
          classes.push_back(
              {{"degree", c.degree}, {"e0", c.e0}, {"class", format_polynomial(model.algebra(), c.representative)}});
        doc["e0"] = rep.e0_algebra;
        doc["cat0"] = rep.cat0 ? json(*rep.cat0) : json(nullptr);
        doc["spectrum"] = spectrum;
        doc["gaps"] = rep.gaps;
        doc["total_dimension"] = rep.total_dimension;
        doc["classes"] = classes;
      } else if (cmd == "wang" || cmd == "gysin") {
        const SequenceKind kind = cmd == "wang" ? SequenceKind::Wang : SequenceKind::Gysin;
        json seqs = json::array();
        bool pass = true;
        std::vector<bool> modes;
        if (length_profile(model).homogeneous()) modes.push_back(true);
        modes.push_back(false);
        for (bool graded : modes) {
          LongExactSequence les(model, kind, graded);
          auto rep = les.check_exactness();
          pass = pass && rep.all_pass();
          seqs.push_back(cli::les_json(rep));
        }
        doc["sequences"] = seqs;
        doc["verdict"] = pass ? "pass" : "fail";
      } else if (cmd == "verify") {
        Analysis a(model);
        std::vector<VerificationReport> reports;
        if (theorem == "all") reports = verify_all(a);
        else reports.push_back(verify(theorem, a));
        json items = json::array();
        bool pass = true;
        for (const auto& r : reports) {
          pass = pass && r.verdict != Verdict::Fail;
          items.push_back(cli::report_json(r));
        }
        doc["certificate"] = cli::certificate_json(a.certificate());
        doc["reports"] = items;
        doc["verdict"] = pass ? "pass" : "fail";
      }
    }
    code = cli::exit_for(doc);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "not applicable: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInvalidModel;
  } catch (const ValidationError& e) {
    err << "invalid model:\n";
    for (const auto& v : e.violations()) err << "  " << v.generator << ": " << v.condition << ": " << v.detail << "\n";
    return kInvalidModel;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }

  std::ostringstream rendered;
  if (o.format == "json") rendered << doc.dump(2) << "\n";
  else cli::render(rendered, doc, 0);
  if (o.out.empty()) {
    out << rendered.str();
  } else {
    std::ofstream file(o.out);
    if (!file) {
      err << "usage error: cannot write " << o.out << "\n";
      return kUsage;
    }
    file << rendered.str();
  }
  return code;
}

}  // namespace sullivan
