#pragma once

// Job specification, presentation-file reader and report rendering behind
// the `chiral` command-line tool.

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "chiral/catalog.hpp"
#include "chiral/chirality.hpp"
#include "chiral/errors.hpp"
#include "chiral/fp.hpp"
#include "chiral/mix.hpp"
#include "chiral/rotation.hpp"

namespace chiral::cli {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum class Format { text, json };

/// Exit codes; they depend on the error class only.
enum ExitCode : int { kOk = 0, kFailure = 1, kParse = 2, kResource = 3, kConsistency = 4 };

struct JobSpec {
  std::string command;              // check | mix | catalog | search | replay
  std::vector<std::string> inputs;  // files (check, mix, replay)
  std::vector<std::string> params;  // catalog name and parameters, search group spec
  std::vector<std::uint64_t> type;  // search only
  std::size_t limit = 100;          // search only
  Limits limits;
  Format format = Format::text;

  void validate() const {
    if (limits.max_cosets == 0 || limits.max_enum == 0 || limits.max_lattice == 0) {
      throw InvalidArgument("caps must be positive");
    }
    auto need = [&](bool ok, const char* what) {
      if (!ok) throw InvalidArgument(command + ": " + what);
    };
    if (command == "check" || command == "replay") {
      need(inputs.size() == 1, "expects one input file");
    } else if (command == "mix") {
      need(inputs.size() == 2, "expects two input files");
    } else if (command == "catalog") {
      need(!params.empty(), "expects an entry name");
    } else if (command == "search") {
      need(!params.empty(), "expects a group");
      need(!type.empty(), "expects --type");
      need(limit > 0, "--limit must be positive");
    } else {
      throw InvalidArgument("unknown command '" + command + "'");
    }
  }
};

// ---------------------------------------------------------------------------
// Presentation files

/// Line grammar: `rank N`, `orders p1 ... p{N-1}`, `relator <word>`, with `#`
/// starting a comment. `orders` emits the standard relators.
inline Presentation parse_presentation(std::string_view text) {
  std::optional<int> rank;
  std::optional<std::vector<std::uint64_t>> orders;
  std::vector<std::pair<std::size_t, std::size_t>> relator_at;  // (line, column) of each relator word
  std::vector<std::string> relator_text;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (start == text.size() && start > 0) break;  // no line after a final newline
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    auto skip_ws = [&](std::size_t p) {
      while (p < line.size() && (line[p] == ' ' || line[p] == '\t')) ++p;
      return p;
    };
    auto token_end = [&](std::size_t p) {
      while (p < line.size() && line[p] != ' ' && line[p] != '\t') ++p;
      return p;
    };
    std::size_t p = skip_ws(0);
    if (p < line.size()) {
      std::size_t q = token_end(p);
      std::string_view key = line.substr(p, q - p);
      auto read_int = [&](std::size_t& pos, const char* what) {
        pos = skip_ws(pos);
        std::size_t e = token_end(pos);
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + e, v);
        if (pos == e || ec != std::errc() || ptr != line.data() + e) {
          throw ParseError(std::string("expected ") + what, pos, line_no);
        }
        std::size_t at = pos;
        pos = e;
        return std::pair{v, at};
      };
      if (key == "rank") {
        if (rank) throw ParseError("duplicate 'rank'", p, line_no);
        std::size_t pos = q;
        auto [v, at] = read_int(pos, "a rank");
        if (v < 2 || v > 64) throw ParseError("rank must be between 2 and 64", at, line_no);
        rank = static_cast<int>(v);
        if (skip_ws(pos) < line.size()) throw ParseError("unexpected text after rank", skip_ws(pos), line_no);
      } else if (key == "orders") {
        if (!rank) throw ParseError("'orders' before 'rank'", p, line_no);
        if (orders) throw ParseError("duplicate 'orders'", p, line_no);
        std::vector<std::uint64_t> o;
        std::size_t pos = q;
        while (skip_ws(pos) < line.size()) {
          auto [v, at] = read_int(pos, "an order");
          if (v < 2) throw ParseError("orders must be at least 2", at, line_no);
          if (static_cast<int>(o.size()) == *rank - 1) throw ParseError("too many orders for the rank", at, line_no);
          o.push_back(v);
        }
        if (static_cast<int>(o.size()) != *rank - 1) {
          throw ParseError("expected " + std::to_string(*rank - 1) + " orders", line.size(), line_no);
        }
        orders = std::move(o);
      } else if (key == "relator") {
        if (!rank) throw ParseError("'relator' before 'rank'", p, line_no);
        std::size_t w = skip_ws(q);
        if (w >= line.size()) throw ParseError("empty relator", w, line_no);
        relator_text.emplace_back(line.substr(w));
        relator_at.emplace_back(line_no, w);
      } else {
        throw ParseError("unknown keyword '" + std::string(key) + "'", p, line_no);
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  if (!rank) throw ParseError("missing 'rank'", 0, line_no == 0 ? 1 : line_no);
  if (!orders) throw ParseError("missing 'orders'", 0, line_no == 0 ? 1 : line_no);

  Presentation p = standard_presentation(*orders);
  for (std::size_t i = 0; i < relator_text.size(); ++i) {
    try {
      p.relators.push_back(parse_word(relator_text[i], *rank));
    } catch (const ParseError& e) {
      // re-anchor the word-relative position in the file
      std::string msg = e.what();
      auto colon = msg.find(": ");
      throw ParseError(colon == std::string::npos ? msg : msg.substr(colon + 2),
                       relator_at[i].second + e.position(), relator_at[i].first);
    }
  }
  return p;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Presentation read_presentation_file(const std::string& path) {
  return parse_presentation(read_file(path));
}

// ---------------------------------------------------------------------------
// Jobs as JSON (for replay)

inline json job_to_json(const JobSpec& job) {
  return json{{"command", job.command},
              {"inputs", job.inputs},
              {"params", job.params},
              {"type", job.type},
              {"limit", job.limit},
              {"max_cosets", job.limits.max_cosets},
              {"max_enum", job.limits.max_enum},
              {"max_lattice", job.limits.max_lattice}};
}

inline JobSpec job_from_json(const json& j) {
  try {
    JobSpec job;
    job.command = j.at("command").get<std::string>();
    job.inputs = j.at("inputs").get<std::vector<std::string>>();
    job.params = j.at("params").get<std::vector<std::string>>();
    job.type = j.at("type").get<std::vector<std::uint64_t>>();
    job.limit = j.at("limit").get<std::size_t>();
    job.limits.max_cosets = j.at("max_cosets").get<std::size_t>();
    job.limits.max_enum = j.at("max_enum").get<std::uint64_t>();
    job.limits.max_lattice = j.at("max_lattice").get<std::uint64_t>();
    return job;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed job record: ") + e.what(), 0);
  }
}

// ---------------------------------------------------------------------------
// Reports

namespace detail {

inline std::uint64_t parse_uint(const std::string& s, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument(std::string(what) + " must be a nonnegative integer, got '" + s + "'");
  }
  return v;
}

inline std::string type_string(const std::vector<std::uint64_t>& t) {
  std::string out = "{";
  for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + std::to_string(t[i]);
  return out + "}";
}

inline json check_json(const IntersectionCheck& c) {
  return json{{"left", IntersectionCheck::range_name(c.left)},
              {"right", IntersectionCheck::range_name(c.right)},
              {"expected", IntersectionCheck::range_name(c.expected)},
              {"left_order", c.left_order},
              {"right_order", c.right_order},
              {"intersection_order", c.intersection_order},
              {"expected_order", c.expected_order},
              {"holds", c.holds()}};
}

/// A word whose period differs from that of its mirror image. Relators of
/// the presentation are tried first, then all words of up to four letters.
inline std::optional<std::pair<Word, std::pair<std::uint64_t, std::uint64_t>>> period_witness(
    const RotationSystem& sys) {
  if (sys.provenance()) {
    for (const auto& r : sys.provenance()->relators) {
      auto pr = word_period_pair(sys, r);
      if (pr.first != pr.second) return std::pair{r, pr};
    }
  }
  const int g = sys.rank() - 1;
  std::vector<Word> layer{Word{}};
  for (int len = 1; len <= 4; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (int i = 1; i <= g; ++i) {
        for (int e : {1, -1}) {
          Word x = w * Word::generator(i, e);
          if (static_cast<int>(x.length()) != len) continue;
          auto pr = word_period_pair(sys, x);
          if (pr.first != pr.second) return std::pair{x, pr};
          next.push_back(std::move(x));
        }
      }
    }
    layer = std::move(next);
  }
  return std::nullopt;
}

inline json system_json(const RotationSystem& sys, const ChiralityReport& r, const Limits& limits) {
  json out;
  out["order"] = r.order;
  out["rank"] = sys.rank();
  out["degree"] = sys.degree();
  out["type"] = r.type;
  out["degenerate_type"] = r.degenerate_type;
  out["status"] = to_string(r.status);
  out["reflexible"] = r.reflexible;
  out["kappa"] = r.kappa;
  out["totally_chiral"] = r.totally_chiral;
  out["method_agreement"] = r.method_agreement ? json(*r.method_agreement) : json(nullptr);
  if (r.chirality_fingerprint) {
    const auto& f = *r.chirality_fingerprint;
    out["chirality_group"] = json{{"order", f.order},
                                  {"abelian", f.abelian},
                                  {"cyclic", f.cyclic},
                                  {"perfect", f.perfect},
                                  {"name", f.name()}};
  } else {
    out["chirality_group"] = nullptr;
  }
  out["self_dual"] = is_self_dual(sys);
  out["improperly_self_dual"] = !r.reflexible && is_improperly_self_dual(sys);

  json inter;
  inter["holds"] = r.intersection.holds;
  inter["checks"] = json::array();
  for (const auto& c : r.intersection.checks) inter["checks"].push_back(check_json(c));
  inter["witness"] = r.intersection.witness ? check_json(*r.intersection.witness) : json(nullptr);
  out["intersection"] = inter;

  json witnesses = json::array();
  if (r.intersection.witness) {
    const auto& w = *r.intersection.witness;
    witnesses.push_back(json{{"kind", "intersection"},
                             {"I", IntersectionCheck::index_set(w.left)},
                             {"J", IntersectionCheck::index_set(w.right)},
                             {"orders", {w.left_order, w.right_order, w.intersection_order}},
                             {"intersection_abelian", w.intersection_abelian}});
  }
  if (!r.reflexible) {
    if (auto pw = period_witness(sys)) {
      witnesses.push_back(json{{"kind", "period"},
                               {"word", print_word(pw->first)},
                               {"periods", {pw->second.first, pw->second.second}}});
    }
  }
  out["witnesses"] = witnesses;

  const bool polytopal = r.status == Status::reflexible || r.status == Status::chiral;
  if (polytopal && r.order <= limits.max_lattice) {
    auto fl = face_lattice(sys, limits.max_lattice);
    out["face_lattice"] = json{{"f_vector", fl.f_vector}, {"flags", fl.flags}};
  } else {
    out["face_lattice"] = nullptr;
  }
  out["notes"] = r.notes;
  return out;
}

inline json classify_json(const RotationSystem& sys, const Limits& limits) {
  ClassifyOptions opts;
  opts.max_enum = limits.max_enum;
  return system_json(sys, classify(sys, opts), limits);
}

inline RotationSystem catalog_system(const std::vector<std::string>& params, const Limits& limits,
                                     json& meta) {
  const std::string& name = params[0];
  std::vector<std::uint64_t> args;
  for (std::size_t i = 1; i < params.size(); ++i) args.push_back(parse_uint(params[i], "catalog parameter"));
  auto need = [&](std::size_t n) {
    if (args.size() != n) {
      throw InvalidArgument("catalog " + name + " expects " + std::to_string(n) + " parameter(s)");
    }
  };
  meta = json{{"name", name}, {"params", args}};
  auto i64 = [](std::uint64_t v) {
    if (v > 1'000'000) throw InvalidArgument("catalog parameter too large");
    return static_cast<std::int64_t>(v);
  };
  if (name == "torus44") {
    need(2);
    return torus_44(i64(args[0]), i64(args[1]), limits);
  }
  if (name == "torus36") {
    need(2);
    return torus_36(i64(args[0]), i64(args[1]), limits);
  }
  if (name == "torus63") {
    need(2);
    return torus_63(i64(args[0]), i64(args[1]), limits);
  }
  if (name == "string") {
    if (args.size() < 2) throw InvalidArgument("catalog string expects at least two orders");
    return rotation_system(string_rotation(args), {}, limits);
  }
  if (name == "toroid4334") {
    need(1);
    return cubic_toroid_4334(i64(args[0]), limits);
  }
  for (const auto& e : catalog_entries()) {
    if (e.name != name) continue;
    need(0);
    meta["description"] = e.expected.description;
    meta["expected_order"] = e.expected.order;
    return named(name, limits);
  }
  throw InvalidArgument("unknown catalog entry '" + name + "'");
}

inline std::pair<PermGroup, std::string> search_group(const std::vector<std::string>& params) {
  const std::string& kind = params[0];
  if (params.size() != 2) throw InvalidArgument("search group must be 'l2 p', 'sym n' or 'alt n'");
  auto n = parse_uint(params[1], "group parameter");
  if (kind == "l2") return {l2(n), "L2(" + std::to_string(n) + ")"};
  if (n > 10) throw InvalidArgument("sym/alt searches are limited to n <= 10");
  if (kind == "sym") return {symmetric_group(n), "S" + std::to_string(n)};
  if (kind == "alt") return {alternating_group(n), "A" + std::to_string(n)};
  throw InvalidArgument("unknown group family '" + kind + "'");
}

}  // namespace detail

/// Runs the job and returns the full report document.
inline json run(const JobSpec& job) {
  job.validate();
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["job"] = job_to_json(job);
  const Limits& lim = job.limits;
  if (job.command == "check") {
    auto sys = rotation_system(read_presentation_file(job.inputs[0]), {}, lim);
    doc["report"] = detail::classify_json(sys, lim);
  } else if (job.command == "mix") {
    auto a = rotation_system(read_presentation_file(job.inputs[0]), {}, lim);
    auto b = rotation_system(read_presentation_file(job.inputs[1]), {}, lim);
    auto m = mix(a, b);
    ClassifyOptions opts;
    opts.max_enum = lim.max_enum;
    auto r = classify_mix(m, opts);
    json rep = detail::system_json(m.base(), r, lim);
    rep["direct_product"] = *r.direct_product;
    rep["components"] = json::array();
    for (const RotationSystem* c : {&a, &b}) {
      rep["components"].push_back(json{{"order", c->order()}, {"type", c->type()}, {"reflexible", is_reflexible(*c)}});
    }
    doc["report"] = rep;
  } else if (job.command == "catalog") {
    json meta;
    auto sys = detail::catalog_system(job.params, lim, meta);
    doc["report"] = detail::classify_json(sys, lim);
    doc["report"]["catalog"] = meta;
  } else if (job.command == "search") {
    auto [group, name] = detail::search_group(job.params);
    auto found = search_tuples(group, job.type, job.limit, lim.max_enum);
    json rep;
    rep["group"] = json{{"name", name}, {"order", group.order()}, {"degree", group.degree()}};
    rep["type"] = job.type;
    rep["count"] = found.size();
    rep["tuples"] = json::array();
    ClassifyOptions opts;
    opts.max_enum = lim.max_enum;
    for (std::size_t i = 0; i < found.size(); ++i) {
      auto r = classify(found[i], opts);
      json gens = json::array();
      for (const auto& s : found[i].sigma()) gens.push_back(s.to_string());
      rep["tuples"].push_back(json{{"index", i},
                                   {"status", to_string(r.status)},
                                   {"kappa", r.kappa},
                                   {"intersection", r.intersection.holds},
                                   {"generators", gens}});
    }
    doc["report"] = rep;
  } else if (job.command == "replay") {
    json old;
    try {
      old = json::parse(read_file(job.inputs[0]));
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("report is not valid JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
    }
    if (!old.is_object() || !old.contains("job")) throw ParseError("report has no job record", 0);
    if (old.value("schema_version", 0) != kSchemaVersion) throw InvalidArgument("unsupported schema version");
    JobSpec again = job_from_json(old["job"]);
    if (again.command == "replay") throw InvalidArgument("cannot replay a replay");
    json fresh = run(again);
    doc["report"] = fresh["report"];
    doc["reproduced"] = old.contains("report") && old["report"] == fresh["report"];
  }
  return doc;
}

/// Human-readable rendering of a report document.
inline std::string render_text(const json& doc) {
  std::ostringstream o;
  const json& job = doc["job"];
  const json& r = doc["report"];
  auto sys_lines = [&](const json& s) {
    o << "order: " << s["order"].get<std::uint64_t>() << "\n";
    o << "type: " << detail::type_string(s["type"].get<std::vector<std::uint64_t>>())
      << (s["degenerate_type"].get<bool>() ? " (degenerate)" : "") << "\n";
    o << "status: " << s["status"].get<std::string>() << "\n";
    o << "reflexible: " << (s["reflexible"].get<bool>() ? "yes" : "no") << "\n";
    o << "chirality index: " << s["kappa"].get<std::uint64_t>();
    if (s["totally_chiral"].get<bool>()) o << " (totally chiral)";
    o << "\n";
    if (!s["chirality_group"].is_null()) {
      const json& x = s["chirality_group"];
      o << "chirality group: order " << x["order"].get<std::uint64_t>();
      if (!x["name"].get<std::string>().empty()) o << " (" << x["name"].get<std::string>() << ")";
      o << (x["abelian"].get<bool>() ? ", abelian" : ", nonabelian");
      if (x["perfect"].get<bool>()) o << ", perfect";
      o << "\n";
    }
    if (!s["method_agreement"].is_null()) {
      o << "chirality methods agree: " << (s["method_agreement"].get<bool>() ? "yes" : "no") << "\n";
    }
    o << "intersection property: " << (s["intersection"]["holds"].get<bool>() ? "holds" : "fails") << "\n";
    for (const auto& c : s["intersection"]["checks"]) {
      o << "  " << c["left"].get<std::string>() << " ∩ " << c["right"].get<std::string>() << " = "
        << c["expected"].get<std::string>() << ": orders " << c["left_order"] << ", " << c["right_order"]
        << " -> " << c["intersection_order"] << " (expected " << c["expected_order"] << ")"
        << (c["holds"].get<bool>() ? "" : "  FAILS") << "\n";
    }
    for (const auto& w : s["witnesses"]) {
      if (w["kind"] == "period") {
        o << "period witness: " << w["word"].get<std::string>() << " has period " << w["periods"][0]
          << ", its mirror image " << w["periods"][1] << "\n";
      }
    }
    o << "self-dual: "
      << (s["self_dual"].get<bool>() ? "yes" : s["improperly_self_dual"].get<bool>() ? "improperly" : "no") << "\n";
    if (!s["face_lattice"].is_null()) {
      o << "faces:";
      for (const auto& f : s["face_lattice"]["f_vector"]) o << " " << f.get<std::uint64_t>();
      o << "; flags: " << s["face_lattice"]["flags"].get<std::uint64_t>() << "\n";
    }
  };
  const std::string cmd = job["command"].get<std::string>();
  if (cmd == "search") {
    o << "group: " << r["group"]["name"].get<std::string>() << " (order " << r["group"]["order"] << ")\n";
    o << "type: " << detail::type_string(r["type"].get<std::vector<std::uint64_t>>()) << "\n";
    o << "tuples: " << r["count"] << "\n";
    for (const auto& t : r["tuples"]) {
      o << "  #" << t["index"] << " " << t["status"].get<std::string>() << " kappa=" << t["kappa"] << " ";
      for (std::size_t i = 0; i < t["generators"].size(); ++i) {
        o << (i ? " " : "") << "s" << i + 1 << "=" << t["generators"][i].get<std::string>();
      }
      o << "\n";
    }
    return o.str();
  }
  if (r.contains("catalog")) {
    o << "catalog: " << r["catalog"]["name"].get<std::string>();
    if (r["catalog"].contains("description")) o << " - " << r["catalog"]["description"].get<std::string>();
    o << "\n";
  }
  sys_lines(r);
  if (cmd == "mix" || (cmd == "replay" && r.contains("components"))) {
    o << "direct product: " << (r["direct_product"].get<bool>() ? "yes" : "no") << "\n";
  }
  if (doc.contains("reproduced")) o << "reproduced: " << (doc["reproduced"].get<bool>() ? "yes" : "no") << "\n";
  return o.str();
}

/// Runs a job, writes the report to `out` and diagnostics to `err`, and
/// returns the exit code.
inline int run_job(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    json doc = run(job);
    if (job.format == Format::json) {
      out << doc.dump(2) << "\n";
    } else {
      out << render_text(doc);
    }
    return kOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << " (limit " << e.limit() << ")\n";
    return kResource;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return kConsistency;
  } catch (const DiamondViolation& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return kConsistency;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace chiral::cli
