// geodetic — command-line front end: graph family generation, geodeticity
// and IEC analysis, tree quasi-isometry certificates, boundary tools, Cayley
// balls, and rewriting-system extraction/verification. Reports are JSON (or
// a text rendering of the same payload) and deterministic for identical
// inputs; wall-clock duration is the one non-deterministic field.
#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "geodetic/boundary.hpp"
#include "geodetic/families.hpp"
#include "geodetic/json_io.hpp"
#include "geodetic/rws.hpp"
#include "geodetic/tree_qi.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using geodetic::json;

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string digest_files(const std::vector<std::string>& paths) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const auto& p : paths) {
    h = fnv1a(p, h);
    std::ifstream in(p, std::ios::binary);
    if (in) {
      std::ostringstream ss;
      ss << in.rdbuf();
      h = fnv1a(ss.str(), h);
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw geodetic::Error("cannot write file '" + path + "'");
  out << content;
}

// text rendering of the same payload: "key: value" lines, nested blocks
void render_text(const json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array()))) {
        os << pad << k << ":\n";
        render_text(v, os, indent + 1);
      } else {
        os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object() || v.is_array()) {
        os << pad << "-\n";
        render_text(v, os, indent + 1);
      } else {
        os << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else {
    os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

struct Request {
  std::string command;
  std::string echo;                 // the full command line as invoked
  std::vector<std::string> inputs;  // files hashed into the report digest
  std::function<json()> run;        // produces the result payload
  int exit_code = 0;                // handlers may set 1 for domain failures
};

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + sep) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return out;
}

std::vector<geodetic::VertexId> resolve_names(const geodetic::Graph& g,
                                              const std::string& csv) {
  std::vector<geodetic::VertexId> out;
  for (const auto& name : split_list(csv, ',')) out.push_back(g.require(name));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodetic graphs, Cayley balls, and length-reducing rewriting systems"};
  app.set_version_flag("--version", std::string("geodetic ") + kVersion);
  app.require_subcommand(1);

  std::string format = "json";
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "text"}));
  int threads = 1;
  app.add_option("--threads", threads, "worker threads for per-root scans")
      ->check(CLI::Range(1, 64));

  Request req;

  // --- gen -------------------------------------------------------------
  {
    auto* gen = app.add_subcommand("gen", "generate a graph family");
    auto family = std::make_shared<std::string>();
    auto params = std::make_shared<std::vector<long>>();
    auto out = std::make_shared<std::string>();
    gen->add_option("family", *family,
                    "complete | cycle | petersen | tree | psi | hypercube")
        ->required();
    gen->add_option("params", *params, "integer parameters");
    gen->add_option("-o,--output", *out, "write the graph JSON to this file");
    gen->callback([&, family, params, out] {
      req.command = "gen";
      req.run = [=] {
        geodetic::Graph g = geodetic::gen_family(*family, *params);
        json jg = geodetic::graph_to_json(g);
        if (!out->empty()) write_file(*out, jg.dump(2) + "\n");
        return json{{"family", *family},
                    {"params", *params},
                    {"vertices", g.order()},
                    {"edges", g.size()},
                    {"graph", std::move(jg)}};
      };
    });
  }

  // --- check-geodetic ---------------------------------------------------
  {
    auto* cmd = app.add_subcommand("check-geodetic",
                                   "test unique-geodesic property");
    auto path = std::make_shared<std::string>();
    cmd->add_option("graph", *path, "graph JSON file")->required();
    cmd->callback([&, path] {
      req.command = "check-geodetic";
      req.inputs = {*path};
      req.run = [=, &threads] {
        geodetic::Graph g = geodetic::load_graph_file(*path);
        auto rep = geodetic::is_geodetic(g, threads);
        json j = geodetic::geodetic_report_to_json(g, rep);
        j["vertices"] = g.order();
        j["edges"] = g.size();
        return j;
      };
    });
  }

  // --- iecs --------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("iecs", "enumerate isometrically embedded circuits");
    auto path = std::make_shared<std::string>();
    auto method = std::make_shared<std::string>("fork");
    auto max_len = std::make_shared<int>(0);
    cmd->add_option("graph", *path)->required();
    cmd->add_option("--method", *method, "fork (geodetic graphs) or brute")
        ->check(CLI::IsMember({"fork", "brute"}));
    cmd->add_option("--max-len", *max_len, "length cap for --method brute");
    cmd->callback([&, path, method, max_len] {
      req.command = "iecs";
      req.inputs = {*path};
      req.run = [=, &threads] {
        geodetic::Graph g = geodetic::load_graph_file(*path);
        geodetic::IecInventory inv =
            *method == "fork"
                ? geodetic::enumerate_iecs_geodetic(g, threads)
                : geodetic::enumerate_iecs_bruteforce(
                      g, *max_len > 0 ? *max_len : g.order());
        json j = geodetic::inventory_to_json(g, inv);
        j["method"] = *method;
        return j;
      };
    });
  }

  // --- tree-qi -----------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("tree-qi",
                                   "geodesic-spanning-tree distortion certificate");
    auto path = std::make_shared<std::string>();
    auto root = std::make_shared<std::string>();
    cmd->add_option("graph", *path)->required();
    cmd->add_option("--root", *root, "basepoint vertex")->required();
    cmd->callback([&, path, root] {
      req.command = "tree-qi";
      req.inputs = {*path};
      req.run = [=, &threads] {
        geodetic::Graph g = geodetic::load_graph_file(*path);
        auto rep = geodetic::distortion_report(g, g.require(*root), threads);
        return geodetic::distortion_to_json(g, rep);
      };
    });
  }

  // --- lift ----------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("lift", "lift a graph geodesic into T_o");
    auto path = std::make_shared<std::string>();
    auto root = std::make_shared<std::string>();
    auto pathspec = std::make_shared<std::string>();
    cmd->add_option("graph", *path)->required();
    cmd->add_option("--root", *root)->required();
    cmd->add_option("--path", *pathspec, "comma-separated vertex names")->required();
    cmd->callback([&, path, root, pathspec] {
      req.command = "lift";
      req.inputs = {*path};
      req.run = [=, &threads] {
        geodetic::Graph g = geodetic::load_graph_file(*path);
        auto tree = geodetic::geodesic_spanning_tree(g, g.require(*root));
        auto inv = geodetic::enumerate_iecs_geodetic(g, threads);
        auto gamma = geodetic::make_geodesic(g, resolve_names(g, *pathspec));
        auto lifted = geodetic::lift_path(g, tree, gamma, inv);
        json j = geodetic::lifted_to_json(g, lifted);
        const int n = geodetic::iec_bound_n(inv);
        j["n"] = n;
        j["bound"] = std::max(1, 2 * n) * gamma.length();
        return j;
      };
    });
  }

  // --- busemann -------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("busemann", "Busemann trace along a ray prefix");
    auto path = std::make_shared<std::string>();
    auto rayspec = std::make_shared<std::string>();
    auto x = std::make_shared<std::string>();
    auto window = std::make_shared<int>(3);
    cmd->add_option("graph", *path)->required();
    cmd->add_option("--ray", *rayspec, "comma-separated vertex names")->required();
    cmd->add_option("--x", *x, "observation vertex")->required();
    cmd->add_option("--window", *window, "stabilisation window");
    cmd->callback([&, path, rayspec, x, window] {
      req.command = "busemann";
      req.inputs = {*path};
      req.run = [=] {
        geodetic::Graph g = geodetic::load_graph_file(*path);
        auto ray = geodetic::validate_ray_prefix(g, resolve_names(g, *rayspec));
        auto tr = geodetic::busemann_trace(g, ray, g.require(*x), *window);
        return geodetic::busemann_to_json(g, ray, g.require(*x), tr);
      };
    });
  }

  // --- rebase ----------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("rebase", "rebase a geodesic ray prefix");
    auto path = std::make_shared<std::string>();
    auto rayspec = std::make_shared<std::string>();
    auto base = std::make_shared<std::string>();
    auto window = std::make_shared<int>(3);
    cmd->add_option("graph", *path)->required();
    cmd->add_option("--ray", *rayspec)->required();
    cmd->add_option("--base", *base, "new base vertex")->required();
    cmd->add_option("--window", *window);
    cmd->callback([&, path, rayspec, base, window] {
      req.command = "rebase";
      req.inputs = {*path};
      req.run = [=] {
        geodetic::Graph g = geodetic::load_graph_file(*path);
        auto ray = geodetic::validate_ray_prefix(g, resolve_names(g, *rayspec));
        const geodetic::VertexId o = g.require(*base);
        auto tr = geodetic::busemann_trace(g, ray, o, *window);
        auto beta = geodetic::rebase_ray(g, ray, o, *window);
        json j = geodetic::ray_to_json(g, beta);
        j["t0"] = tr.stable_from ? json(*tr.stable_from) : json(nullptr);
        return j;
      };
    });
  }

  // --- ray-extend ---------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("ray-extend", "glue finite rays at attach vertices");
    auto path = std::make_shared<std::string>();
    auto attach = std::make_shared<std::string>();
    auto length = std::make_shared<int>(1);
    auto out = std::make_shared<std::string>();
    cmd->add_option("graph", *path)->required();
    cmd->add_option("--attach", *attach, "comma-separated vertex names")->required();
    cmd->add_option("--length", *length, "ray length in edges")->required();
    cmd->add_option("-o,--output", *out);
    cmd->callback([&, path, attach, length, out] {
      req.command = "ray-extend";
      req.inputs = {*path};
      req.run = [=] {
        geodetic::Graph g = geodetic::load_graph_file(*path);
        geodetic::Graph ext =
            geodetic::ray_extend(g, resolve_names(g, *attach), *length);
        json jg = geodetic::graph_to_json(ext);
        if (!out->empty()) write_file(*out, jg.dump(2) + "\n");
        return json{{"vertices", ext.order()},
                    {"edges", ext.size()},
                    {"length", *length},
                    {"graph", std::move(jg)}};
      };
    });
  }

  // --- onion ---------------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("onion", "search for a deepest onion prefix");
    auto path = std::make_shared<std::string>();
    auto max_depth = std::make_shared<int>(4);
    auto centrals = std::make_shared<std::vector<std::string>>();
    auto method = std::make_shared<std::string>("fork");
    auto max_len = std::make_shared<int>(0);
    cmd->add_option("graph", *path)->required();
    cmd->add_option("--max-depth", *max_depth);
    cmd->add_option("--central-edge", *centrals, "restrict to edges 'u:v' (repeatable)");
    cmd->add_option("--method", *method, "inventory method")
        ->check(CLI::IsMember({"fork", "brute"}));
    cmd->add_option("--max-len", *max_len, "length cap for --method brute");
    cmd->callback([&, path, max_depth, centrals, method, max_len] {
      req.command = "onion";
      req.inputs = {*path};
      req.run = [=, &threads] {
        geodetic::Graph g = geodetic::load_graph_file(*path);
        geodetic::IecInventory inv =
            *method == "fork"
                ? geodetic::enumerate_iecs_geodetic(g, threads)
                : geodetic::enumerate_iecs_bruteforce(
                      g, *max_len > 0 ? *max_len : g.order());
        std::optional<std::vector<std::pair<geodetic::VertexId, geodetic::VertexId>>>
            restrict_edges;
        if (!centrals->empty()) {
          restrict_edges.emplace();
          for (const auto& spec : *centrals) {
            auto parts = split_list(spec, ':');
            if (parts.size() != 2)
              throw geodetic::InvalidArgument("--central-edge expects 'u:v', got '" +
                                              spec + "'");
            restrict_edges->emplace_back(g.require(parts[0]), g.require(parts[1]));
          }
        }
        auto prefix = geodetic::find_onion_prefix(g, inv, *max_depth, restrict_edges);
        json j;
        j["max_depth"] = *max_depth;
        j["prefix"] = geodetic::onion_to_json(g, prefix);
        if (prefix) j["apexes"] = g.names_of(geodetic::onion_apexes(g, *prefix));
        return j;
      };
    });
  }

  // --- cayley-ball ------------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("cayley-ball", "generate a labeled Cayley ball");
    auto path = std::make_shared<std::string>();
    auto radius = std::make_shared<int>(0);
    auto out = std::make_shared<std::string>();
    cmd->add_option("group", *path, "group spec JSON file")->required();
    cmd->add_option("--radius", *radius)->required();
    cmd->add_option("-o,--output", *out);
    cmd->callback([&, path, radius, out] {
      req.command = "cayley-ball";
      req.inputs = {*path};
      req.run = [=] {
        auto spec = geodetic::spec_from_json(geodetic::load_json_file(*path));
        auto ball = geodetic::cayley_ball(spec, *radius);
        json jb = geodetic::ball_to_json(ball);
        if (!out->empty()) write_file(*out, jb.dump(2) + "\n");
        return json{{"radius", *radius},
                    {"vertices", ball.graph.order()},
                    {"edges", ball.graph.size()},
                    {"ball", std::move(jb)}};
      };
    });
  }

  // --- rws-extract --------------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("rws-extract",
                                   "extract the rewriting system of a geodetic ball");
    auto path = std::make_shared<std::string>();
    auto radius = std::make_shared<int>(0);
    auto out = std::make_shared<std::string>();
    cmd->add_option("group", *path)->required();
    cmd->add_option("--radius", *radius)->required();
    cmd->add_option("-o,--output", *out, "write the system in text format");
    cmd->callback([&, path, radius, out] {
      req.command = "rws-extract";
      req.inputs = {*path};
      req.run = [=, &threads] {
        auto spec = geodetic::spec_from_json(geodetic::load_json_file(*path));
        auto ball = geodetic::cayley_ball(spec, *radius);
        auto inv = geodetic::enumerate_iecs_geodetic(ball.graph, threads);
        auto ext = geodetic::extract_rws(ball, inv);
        if (!out->empty()) write_file(*out, geodetic::rws_to_text(ext.system));
        json j = geodetic::rws_to_json(ext.system);
        j["identity_iecs"] = ext.identity_iecs;
        j["completeness_warning"] = ext.completeness_warning;
        j["radius"] = *radius;
        return j;
      };
    });
  }

  // --- rws-check ------------------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("rws-check", "critical-pair confluence check");
    auto path = std::make_shared<std::string>();
    cmd->add_option("system", *path, "rewriting system text file")->required();
    cmd->callback([&, path] {
      req.command = "rws-check";
      req.inputs = {*path};
      req.run = [=] {
        auto sys = geodetic::rws_from_text(geodetic::load_text_file(*path));
        auto rep = geodetic::check_confluence(sys);
        json j = geodetic::confluence_to_json(sys.alphabet(), rep);
        j["rules"] = static_cast<int>(sys.rules().size());
        return j;
      };
    });
  }

  // --- normalize -------------------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("normalize", "reduce a word to normal form");
    auto path = std::make_shared<std::string>();
    auto word = std::make_shared<std::string>();
    cmd->add_option("system", *path)->required();
    cmd->add_option("--word", *word, "whitespace-separated tokens ('1' = empty)")
        ->required();
    cmd->callback([&, path, word] {
      req.command = "normalize";
      req.inputs = {*path};
      req.run = [=] {
        auto sys = geodetic::rws_from_text(geodetic::load_text_file(*path));
        auto in = geodetic::parse_word(sys.alphabet(), *word);
        auto tr = geodetic::normalize_traced(sys, in);
        return json{{"input", geodetic::word_to_string(sys.alphabet(), in)},
                    {"normal_form", geodetic::word_to_string(sys.alphabet(), tr.result)},
                    {"steps", tr.steps}};
      };
    });
  }

  // --- wp ---------------------------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("wp", "word problem: are two words equal?");
    auto path = std::make_shared<std::string>();
    auto left = std::make_shared<std::string>();
    auto right = std::make_shared<std::string>();
    cmd->add_option("system", *path)->required();
    cmd->add_option("--left", *left)->required();
    cmd->add_option("--right", *right)->required();
    cmd->callback([&, path, left, right] {
      req.command = "wp";
      req.inputs = {*path};
      req.run = [=] {
        auto sys = geodetic::rws_from_text(geodetic::load_text_file(*path));
        auto cert = geodetic::check_confluence(sys);
        auto wl = geodetic::parse_word(sys.alphabet(), *left);
        auto wr = geodetic::parse_word(sys.alphabet(), *right);
        const bool equal = geodetic::words_equal(sys, cert, wl, wr);
        return json{
            {"equal", equal},
            {"nf_left", geodetic::word_to_string(sys.alphabet(),
                                                 geodetic::normalize(sys, wl))},
            {"nf_right", geodetic::word_to_string(sys.alphabet(),
                                                  geodetic::normalize(sys, wr))}};
      };
    });
  }

  // --- pipeline ----------------------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "pipeline", "ball -> geodetic -> IECs -> extraction -> confluence -> "
                    "cross-validation");
    auto path = std::make_shared<std::string>();
    auto radius = std::make_shared<int>(4);
    auto samples = std::make_shared<int>(1000);
    auto max_len = std::make_shared<int>(10);
    auto seed = std::make_shared<std::uint64_t>(42);
    cmd->add_option("group", *path)->required();
    cmd->add_option("--radius", *radius, "extraction ball radius");
    cmd->add_option("--samples", *samples);
    cmd->add_option("--max-len", *max_len, "sample word length cap (also the evaluation radius)");
    cmd->add_option("--seed", *seed);
    cmd->callback([&, path, radius, samples, max_len, seed] {
      req.command = "pipeline";
      req.inputs = {*path};
      req.run = [=, &req, &threads] {
        auto spec = geodetic::spec_from_json(geodetic::load_json_file(*path));
        json stages = json::array();
        json out;
        auto fail = [&](const std::string& stage, const json& detail) {
          stages.push_back(json{{"stage", stage}, {"ok", false}, {"detail", detail}});
          out["stages"] = stages;
          out["ok"] = false;
          req.exit_code = 1;
          return out;
        };

        auto ball = geodetic::cayley_ball(spec, *radius);
        stages.push_back(json{{"stage", "cayley-ball"},
                              {"ok", true},
                              {"detail", json{{"vertices", ball.graph.order()},
                                              {"edges", ball.graph.size()}}}});

        auto rep = geodetic::is_geodetic(ball.graph, threads);
        if (!rep.geodetic)
          return fail("geodetic", geodetic::geodetic_report_to_json(ball.graph, rep));
        stages.push_back(json{{"stage", "geodetic"}, {"ok", true},
                              {"detail", json{{"geodetic", true}}}});

        auto inv = geodetic::enumerate_iecs_geodetic(ball.graph, threads);
        stages.push_back(json{{"stage", "iecs"},
                              {"ok", true},
                              {"detail", geodetic::inventory_to_json(ball.graph, inv)}});

        auto ext = geodetic::extract_rws(ball, inv);
        stages.push_back(
            json{{"stage", "extract"},
                 {"ok", true},
                 {"detail", json{{"rules", static_cast<int>(ext.system.rules().size())},
                                 {"identity_iecs", ext.identity_iecs},
                                 {"completeness_warning", ext.completeness_warning}}}});

        auto cert = geodetic::check_confluence(ext.system);
        if (!cert.confluent)
          return fail("confluence",
                      geodetic::confluence_to_json(ext.system.alphabet(), cert));
        stages.push_back(json{{"stage", "confluence"},
                              {"ok", true},
                              {"detail", json{{"critical_pairs", cert.pair_count}}}});

        auto eval_ball = geodetic::cayley_ball(spec, *max_len);
        auto cv = geodetic::cross_validate(ext.system, cert, spec, eval_ball,
                                           *samples, *max_len, *seed);
        const bool cv_ok = cv.disagreements == 0 && cv.length_mismatches == 0;
        stages.push_back(json{{"stage", "cross-validate"},
                              {"ok", cv_ok},
                              {"detail", geodetic::crossval_to_json(cv)}});
        out["stages"] = stages;
        out["ok"] = cv_ok;
        if (!cv_ok) req.exit_code = 1;
        return out;
      };
    });
  }

  for (int i = 1; i < argc; ++i) {
    if (i > 1) req.echo += ' ';
    req.echo += argv[i];
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  const auto t0 = std::chrono::steady_clock::now();
  json result;
  try {
    result = req.run();
  } catch (const geodetic::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();

  json report{{"command", req.command},
              {"command_line", req.echo},
              {"version", kVersion},
              {"input_digest", digest_files(req.inputs)},
              {"result", std::move(result)},
              {"duration_ms", ms}};
  if (format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    render_text(report, std::cout, 0);
  }
  return req.exit_code;
}
