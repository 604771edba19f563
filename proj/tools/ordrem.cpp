// Command-line front end. Exit status: 0 success, 1 domain refusal or
// infeasible request, 2 input error, 3 internal failure.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "ordrem/classify.hpp"
#include "ordrem/constructions.hpp"
#include "ordrem/counting.hpp"
#include "ordrem/edits.hpp"
#include "ordrem/generators.hpp"
#include "ordrem/io.hpp"
#include "ordrem/repair_d.hpp"
#include "ordrem/tester.hpp"

using namespace ordrem;

namespace {

// Exact decimal rendering with `digits` fractional digits (rounded half up).
std::string decimal(const Rational& r, unsigned digits) {
  BigInt scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  const bool neg = r < 0;
  const Rational a = neg ? Rational(-r) : r;
  BigInt scaled = floor(a * Rational(scale) + Rational(1, 2));
  BigInt whole = scaled / scale, frac = scaled % scale;
  std::string f = frac.str();
  f.insert(0, digits - f.size(), '0');
  return (neg && scaled != 0 ? "-" : "") + whole.str() + (digits ? "." + f : "");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  return out;
}

void write_copies(std::ostream& out, const RSOutput& o) {
  out << "# planted copies, one tuple per line\n";
  for (const auto& c : o.planted_copies) {
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
    out << '\n';
  }
  if (!o.certificates.empty()) {
    out << "# disjoint certificate edge sets, one per line as u v pairs\n";
    for (const auto& e : o.certificates) {
      out << "edges";
      for (auto [u, v] : e) out << ' ' << u << ' ' << v;
      out << '\n';
    }
  }
}

void summarize(std::ostream& out, const RSOutput& o) {
  out << "case: " << o.case_label << '\n'
      << "vertices: " << o.graph.size() << '\n'
      << "edges: " << o.graph.edge_count() << '\n'
      << "m: " << o.m << '\n'
      << "solution_free_size: " << o.solution_free.size() << '\n'
      << "solution_free_method: " << o.solution_free_method << '\n'
      << "base_vertices: " << o.base_size << '\n'
      << "factor: " << o.factor << '\n'
      << "tuples: " << o.tuples << '\n'
      << "planted_copies: " << o.planted_copies.size() << '\n'
      << "complemented: " << (o.complemented ? 1 : 0) << '\n'
      << "pattern: " << o.pattern.describe() << '\n';
  if (o.census) out << "census: " << o.census->str() << '\n';
  if (!o.certificates.empty()) out << "certificates: " << o.certificates.size() << '\n';
}

// Hard instances plus random controls, all parameters fixed; the tester rate
// column uses derived per-row seeds.
void run_corpus(std::ostream& out, std::uint64_t seed, std::size_t trials) {
  struct Row {
    std::string name, kind;
    OrderedGraph pattern, graph;
    std::string planted, census;
  };
  std::vector<Row> rows;
  auto hard = [&](const std::string& name, const OrderedGraph& f, std::uint64_t m, std::size_t n) {
    RSOptions o;
    o.m = m;
    auto r = hard_instance_induced(f, Rational(1, 100000), n, o);
    rows.push_back({name + " m=" + std::to_string(m), r.case_label, f, r.graph, std::to_string(r.planted_copies.size()),
                    r.census->str()});
  };
  const auto tri = named::complete(3);
  hard("triangle", tri, 2, 200);
  hard("triangle", tri, 4, 200);
  hard("triangle", tri, 8, 200);
  hard("C4^(3)", named::c4_3(), 1, 120);
  hard("C4^(2)", named::c4_2(), 1, 120);
  hard("P4^(1)", named::p4_1(), 1, 120);
  hard("P3^mon", named::monotone_path(3), 2, 120);
  hard("5-cycle", named::cycle({0, 2, 4, 1, 3}), 1, 150);
  {
    RSOptions o;
    o.m = 1;
    auto r = hard_instance_noninduced(named::c4_1(), Rational(1, 100000), 160, o);
    rows.push_back({"C4^(1) non-induced m=1", r.case_label, named::c4_1(), r.graph,
                    std::to_string(r.planted_copies.size()), r.census->str()});
  }
  // controls: random graphs matching the triangle m=4 instance
  const auto& ref = rows[1].graph;
  const std::size_t n = ref.size();
  Rng rng(derive_seed(seed, 1000));
  auto dense = random_graph(n, ref.edge_count(), n * (n - 1) / 2, rng);
  rows.push_back({"random density-matched", "control", tri, dense, "-", count_induced(tri, dense).str()});
  for (std::uint64_t num = 10; num <= 500; num += 10) {
    Rng r2(derive_seed(seed, 2000 + num));
    auto sparse = random_graph(n, num, 1000, r2);
    const auto pack = pack_disjoint_copies(tri, sparse, CopyKind::induced).size();
    if (pack >= std::stoull(rows[1].planted)) {
      rows.push_back({"random packing-matched p=" + std::to_string(num) + "/1000", "control", tri, sparse,
                      std::to_string(pack), count_induced(tri, sparse).str()});
      break;
    }
  }

  out << "name\tkind\tvertices\tedges\tplanted\tcensus\tq\treject_rate\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::size_t q = 2 * r.pattern.size() + 2;
    auto rate = rejection_rate(r.graph, r.pattern, q, true, trials, derive_seed(seed, i));
    out << r.name << '\t' << r.kind << '\t' << r.graph.size() << '\t' << r.graph.edge_count() << '\t' << r.planted
        << '\t' << r.census << '\t' << q << '\t' << decimal(Rational(rate.rejections, rate.trials), 4) << '\n';
  }
  out << "\nsummary:\n"
      << "rows: " << rows.size() << '\n'
      << "seed: " << seed << '\n'
      << "trials: " << trials << '\n';
  std::size_t checked = 0;
  for (const auto& r : rows)
    if (r.kind != "control") ++checked;
  out << "hard_instances_self_checked: " << checked << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordered graph removal toolkit"};
  app.set_config("--config", "", "read options from a TOML/INI file");
  app.require_subcommand(1);

  // count
  auto* count = app.add_subcommand("count", "count copies of a pattern");
  std::string pattern_file, graph_file;
  bool copies = false, induced_flag = false;
  std::uint64_t estimate = 0, seed = 1;
  count->add_option("--pattern", pattern_file)->required();
  count->add_option("--graph", graph_file)->required();
  auto* ind = count->add_flag("--induced", induced_flag, "induced copies (default)");
  count->add_flag("--copies", copies, "not necessarily induced copies")->excludes(ind);
  count->add_option("--estimate", estimate, "sample this many vertex subsets instead of counting");
  count->add_option("--seed", seed);

  // repair
  auto* repair = app.add_subcommand("repair", "make a graph induced-D-free");
  std::string epsilon_text = "1/10", mode_text = "practical", edits_file, trace_file, patched_file;
  std::vector<std::string> params;
  repair->add_option("--graph", graph_file)->required();
  repair->add_option("--epsilon", epsilon_text);
  repair->add_option("--mode", mode_text)->check(CLI::IsMember({"theorem", "practical"}));
  repair->add_option("--param", params, "name=value overrides");
  repair->add_option("--out-edits", edits_file);
  repair->add_option("--out-trace", trace_file);
  repair->add_option("--out-graph", patched_file, "write the patched graph");

  // construct
  auto* construct = app.add_subcommand("construct", "lower-bound constructions");
  std::string family, target_file, out_file, cert_file;
  std::size_t n_opt = 0;
  std::uint64_t m_opt = 0, k_opt = 3, r_opt = 0;
  bool no_census = false;
  construct->add_option("--family", family)
      ->required()
      ->check(CLI::IsMember({"behrend", "design", "rs", "hard-induced", "hard-noninduced"}));
  construct->add_option("--target", target_file);
  construct->add_option("--epsilon", epsilon_text);
  construct->add_option("--n", n_opt);
  construct->add_option("--m", m_opt);
  construct->add_option("--k", k_opt, "equation order (behrend) or tuple length (design)");
  construct->add_option("--r", r_opt, "alphabet size (design)");
  construct->add_option("--out", out_file);
  construct->add_option("--certificate", cert_file);
  construct->add_flag("--no-census", no_census);

  // classify
  auto* classify = app.add_subcommand("classify", "removal-bound regime of a pattern");
  bool noninduced_flag = false;
  classify->add_option("--graph", graph_file)->required();
  auto* ci = classify->add_flag("--induced", induced_flag);
  classify->add_flag("--noninduced", noninduced_flag)->excludes(ci);

  // core
  auto* core_cmd = app.add_subcommand("core", "core of a pattern");
  core_cmd->add_option("--graph", graph_file)->required();
  core_cmd->add_option("--out", out_file);

  // test
  auto* test = app.add_subcommand("test", "one-sided tester simulation");
  std::size_t q = 0, trials = 100;
  test->add_option("--graph", graph_file)->required();
  test->add_option("--pattern", pattern_file)->required();
  test->add_option("--q", q)->required();
  test->add_option("--trials", trials);
  test->add_option("--seed", seed);
  test->add_flag("--induced", induced_flag);

  // corpus
  auto* corpus = app.add_subcommand("corpus", "shipped instance catalog report");
  corpus->add_option("--seed", seed);
  corpus->add_option("--trials", trials);
  corpus->add_option("--out", out_file);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*count) {
      const auto f = read_graph_file(pattern_file);
      const auto g = read_graph_file(graph_file);
      if (estimate) {
        if (copies) throw InputError("--estimate is available for induced counts only");
        const Rational frac = estimate_induced(f, g, estimate, seed);
        std::cout << decimal(frac * Rational(choose(g.size(), f.size())), 6) << '\n';
      } else {
        std::cout << (copies ? count_copies(f, g) : count_induced(f, g)).str() << '\n';
      }
    } else if (*repair) {
      const auto g = read_graph_file(graph_file);
      std::map<std::string, Rational> overrides;
      for (const auto& p : params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos) throw InputError("--param expects name=value, got '" + p + "'");
        overrides[p.substr(0, eq)] = parse_rational(p.substr(eq + 1));
      }
      auto result = repair_D(g, parse_rational(epsilon_text), parse_repair_mode(mode_text), overrides);
      const auto patched = apply(g, result.edits);
      if (!edits_file.empty()) {
        auto out = open_out(edits_file);
        write_edits(out, result.edits);
      }
      if (!trace_file.empty()) {
        auto out = open_out(trace_file);
        write_trace(out, result.trace);
      }
      if (!patched_file.empty()) write_graph_file(patched_file, patched);
      std::cout << "edits: " << result.edits.size() << '\n'
                << "initial_count: " << result.trace.initial_count << '\n'
                << "final_count: " << count_induced_D_u64(patched) << '\n';
    } else if (*construct) {
      std::ostringstream body;
      if (family == "behrend") {
        if (!m_opt) throw InputError("--m is required for behrend");
        auto b = behrend_set(m_opt, k_opt);
        std::cout << "m: " << b.m << "\nk: " << b.k << "\nsize: " << b.elements.size() << "\nverified: " << b.verified
                  << "\nmethod: " << b.method << "\ngreedy_baseline: " << greedy_solution_free(m_opt, k_opt).size()
                  << '\n';
        for (auto x : b.elements) body << x << '\n';
      } else if (family == "design") {
        auto tuples = design_tuples(r_opt, k_opt);
        std::cout << "prime: " << design_prime(r_opt) << "\ntuples: " << tuples.size()
                  << "\nviolations: " << design_violations(tuples) << '\n';
        for (const auto& t : tuples) {
          for (std::size_t i = 0; i < t.size(); ++i) body << (i ? " " : "") << t[i];
          body << '\n';
        }
      } else {
        if (target_file.empty()) throw InputError("--target is required for family " + family);
        if (!n_opt) throw InputError("--n is required for family " + family);
        const auto f = read_graph_file(target_file);
        const Rational eps = parse_rational(epsilon_text);
        RSOptions opt;
        if (m_opt) opt.m = m_opt;
        opt.census = !no_census;
        RSOutput o;
        if (family == "hard-induced") {
          o = hard_instance_induced(f, eps, n_opt, opt);
        } else if (family == "hard-noninduced") {
          o = hard_instance_noninduced(f, eps, n_opt, opt);
        } else {
          auto c = induced_case(f);
          if (!c) throw RefusalError("target has polynomial induced removal bounds");
          if (c->symmetry != Symmetry::identity)
            throw InputError("target is handled via its " + to_string(c->symmetry) + "; use --family hard-induced");
          o = rs_construct(f, c->spec, eps, n_opt, opt);
          o.case_label = c->label;
        }
        summarize(std::cout, o);
        write_graph(body, o.graph);
        if (!cert_file.empty()) {
          auto out = open_out(cert_file);
          write_copies(out, o);
        }
      }
      if (!out_file.empty()) {
        auto out = open_out(out_file);
        out << body.str();
      }
    } else if (*classify) {
      const auto f = read_graph_file(graph_file);
      if (noninduced_flag) {
        auto c = classify_noninduced(f);
        std::cout << to_string(c.verdict) << '\t' << c.reason << '\n';
        write_graph(std::cout, c.core);
      } else {
        auto c = classify_induced(f);
        std::cout << to_string(c.verdict) << '\t' << c.reason << '\n';
      }
    } else if (*core_cmd) {
      const auto k = core(read_graph_file(graph_file));
      if (out_file.empty()) write_graph(std::cout, k);
      else write_graph_file(out_file, k);
    } else if (*test) {
      const auto g = read_graph_file(graph_file);
      const auto f = read_graph_file(pattern_file);
      if (q < f.size()) throw InputError("--q must be at least v(pattern) = " + std::to_string(f.size()));
      std::vector<std::size_t> grid;
      for (std::size_t x = std::max<std::size_t>(f.size(), 1); x < q; x *= 2) grid.push_back(x);
      grid.push_back(q);
      std::cout << "q\ttrials\trejections\trate\n";
      for (auto x : grid) {
        auto r = rejection_rate(g, f, x, induced_flag, trials, seed);
        std::cout << x << '\t' << r.trials << '\t' << r.rejections << '\t'
                  << decimal(Rational(r.rejections, r.trials), 4) << '\n';
      }
    } else if (*corpus) {
      if (out_file.empty()) {
        run_corpus(std::cout, seed, trials);
      } else {
        auto out = open_out(out_file);
        run_corpus(out, seed, trials);
      }
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const TooLargeError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const RefusalError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return 1;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
