#include "wm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "wm/characters.hpp"
#include "wm/errors.hpp"
#include "wm/oracle.hpp"
#include "wm/phi.hpp"
#include "wm/schreier.hpp"
#include "wm/serialize.hpp"
#include "wm/wordstats.hpp"

namespace wm {

namespace {

using nlohmann::json;

int infer_rank(const std::string& text, int floor = 1) {
  int r = floor;
  for (char c : text) {
    int g = generator_index(c);
    if (g >= 0) r = std::max(r, g + 1);
  }
  return r;
}

Word parse_word_arg(const std::string& text, int rank_flag) {
  int rank = rank_flag > 0 ? rank_flag : infer_rank(text);
  return parse_word(text, rank);
}

std::string rat_str(const Rat& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw parse_error("bad integer list entry '" + item + "'");
    }
  }
  if (out.empty()) throw parse_error("empty integer list");
  return out;
}

struct EvalRange {
  long lo = 0, hi = 0;
};

EvalRange parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos)
    throw parse_error("expected a range like 6..8", 0);
  EvalRange r;
  try {
    r.lo = std::stol(text.substr(0, dots));
    r.hi = std::stol(text.substr(dots + 2));
  } catch (const std::exception&) {
    throw parse_error("bad range bound in '" + text + "'");
  }
  if (r.lo > r.hi) throw parse_error("empty range '" + text + "'");
  return r;
}

// Exponent-vector view of a class function in the xi basis: list of
// (alpha, coefficient) with the constant term split off.
struct MonomialSum {
  Rat constant = 0;
  std::vector<std::pair<std::vector<int>, Rat>> terms;
};

MonomialSum monomials_of(const ClassFun& f) {
  ClassFun x = to_basis(f, Basis::xi);
  MonomialSum out;
  for (const auto& [alpha, coeff] : x.terms) {
    if (coeff == 0) continue;
    if (alpha.empty())
      out.constant = coeff;
    else
      out.terms.emplace_back(alpha, coeff);
  }
  return out;
}

std::string dot_of(const CoreGraph& g) {
  std::ostringstream os;
  os << "digraph core {\n";
  for (int v = 0; v < g.num_vertices(); ++v) os << "  v" << v << ";\n";
  for (const GEdge& e : g.edges())
    os << "  v" << e.tail << " -> v" << e.head << " [label=\""
       << generator_char(e.label) << "\"];\n";
  os << "}\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw parse_error("cannot open output file '" + path + "'");
  f << content;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

// ---- subcommand bodies ------------------------------------------------

int cmd_expect(const std::string& word_text, const std::string& stat_text,
               int rank_flag, int laurent_order, const std::string& eval_range,
               bool as_json, std::ostream& out) {
  Word w = parse_word_arg(word_text, rank_flag);
  if (w.letters.empty())
    throw parse_error("the trivial word has no expectation report");
  ClassFun f = parse_class_function(stat_text);
  MonomialSum ms = monomials_of(f);
  if (ms.terms.empty())
    throw parse_error("the statistic has no xi terms");

  PhiContext ctx;
  RatFn total = RatFn::constant(ms.constant);
  Rat e_unif = ms.constant;
  Rat c_const = 0;
  std::optional<ExpectationReport> single;
  std::optional<int> pi;
  std::size_t crit_count = 0;
  for (const auto& [alpha, coeff] : ms.terms) {
    ExpectationReport r = expectation(w, alpha, ctx);
    total = total + RatFn::constant(coeff) * r.value;
    e_unif += coeff * r.e_unif;
    c_const += coeff * r.c_const;
    pi = r.pi;
    crit_count = r.crit_count;
    if (ms.terms.size() == 1 && ms.constant == 0 && coeff == 1) single = r;
  }

  json j;
  if (single) {
    j = to_json(*single);
  } else {
    j["word"] = print_word(w);
    j["stat"] = to_string(f);
    j["value"] = to_json(total);
    j["e_unif"] = rat_str(e_unif);
    j["c_const"] = rat_str(c_const);
    if (pi)
      j["pi"] = *pi;
    else
      j["pi"] = "infinity";
    j["crit_count"] = crit_count;
  }
  if (laurent_order >= 0) {
    LaurentTail tail = laurent(total, laurent_order);
    j["laurent"] = to_json(tail);
  }
  if (!eval_range.empty()) {
    EvalRange r = parse_range(eval_range);
    json evals = json::array();
    for (long n = r.lo; n <= r.hi; ++n) {
      json row;
      row["N"] = n;
      row["value"] = rat_str(total.at(n));
      if (n < total.n_min()) row["below_n_min"] = true;
      evals.push_back(row);
    }
    j["eval"] = evals;
  }

  if (as_json) {
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "word: " << print_word(w) << "\n";
  out << "stat: " << to_string(f) << "\n";
  out << "E = " << to_split_string(total) << "\n";
  out << "valid for N >= " << total.n_min() << "\n";
  out << "E_unif = " << rat_str(e_unif) << "\n";
  out << "<stat, xi1 - 1> = " << rat_str(c_const) << "\n";
  if (pi)
    out << "pi = " << *pi << ", |Crit| = " << crit_count << "\n";
  else
    out << "pi = infinity, |Crit| = 0\n";
  if (laurent_order >= 0) {
    LaurentTail tail = laurent(total, laurent_order);
    out << "expansion: " << to_string(tail) << "\n";
  }
  if (!eval_range.empty()) {
    EvalRange r = parse_range(eval_range);
    for (long n = r.lo; n <= r.hi; ++n) {
      out << "N=" << n << ": " << rat_str(total.at(n));
      if (n < total.n_min()) out << "  (below n_min)";
      out << "\n";
    }
  }
  return 0;
}

int cmd_pirank(const std::string& word_text, int rank_flag, bool as_json,
               std::ostream& out) {
  Word w = parse_word_arg(word_text, rank_flag);
  PrimitivityReport r = primitivity(w);
  if (as_json) {
    json j;
    if (r.pi)
      j["pi"] = *r.pi;
    else
      j["pi"] = "infinity";
    j["crit_count"] = r.critical.size();
    json wit = json::array();
    for (const Witness& c : r.critical) {
      json e;
      e["subgroup"] = to_json(c.subgroup);
      e["embedding"] = to_json(c.embedding);
      json gens = json::array();
      for (const Word& g : c.generators) gens.push_back(print_word(g));
      e["generators"] = gens;
      wit.push_back(e);
    }
    j["critical"] = wit;
    out << j.dump(2) << "\n";
    return 0;
  }
  if (r.pi)
    out << "pi = " << *r.pi << "\n";
  else
    out << "pi = infinity\n";
  out << "|Crit| = " << r.critical.size() << "\n";
  for (const Witness& c : r.critical) {
    out << "critical subgroup: <";
    for (std::size_t i = 0; i < c.generators.size(); ++i) {
      if (i) out << ", ";
      out << print_word(c.generators[i]);
    }
    int nv = c.subgroup.num_vertices();
    out << ">  (" << nv << (nv == 1 ? " vertex)\n" : " vertices)\n");
  }
  return 0;
}

int cmd_inner(const std::string& f_text, const std::string& g_text,
              bool as_json, std::ostream& out) {
  ClassFun f = parse_class_function(f_text);
  ClassFun g = parse_class_function(g_text);
  Rat v = stable_inner(f, g);
  if (as_json) {
    json j;
    j["f"] = to_string(f);
    j["g"] = to_string(g);
    j["value"] = rat_str(v);
    out << j.dump(2) << "\n";
  } else {
    out << rat_str(v) << "\n";
  }
  return 0;
}

int cmd_irreducible(const std::string& lambda_text, bool as_json,
                    std::ostream& out) {
  std::vector<int> lambda = parse_int_list(lambda_text);
  for (std::size_t i = 0; i + 1 < lambda.size(); ++i)
    if (lambda[i] < lambda[i + 1])
      throw parse_error("partition parts must be weakly decreasing");
  if (!lambda.empty() && lambda.back() <= 0)
    throw parse_error("partition parts must be positive");
  ClassFun chi = stable_irreducible(lambda);
  RatFn dim = dimension_poly(lambda);
  if (as_json) {
    json j;
    j["lambda"] = lambda;
    j["character"] = to_string(chi);
    j["character_xi"] = to_string(to_basis(chi, Basis::xi));
    j["dimension"] = to_json(dim);
    out << j.dump(2) << "\n";
  } else {
    out << "character (a basis): " << to_string(chi) << "\n";
    out << "character (xi basis): " << to_string(to_basis(chi, Basis::xi))
        << "\n";
    out << "dimension = " << to_split_string(dim) << "\n";
  }
  return 0;
}

int cmd_unif(const std::string& stat_text, bool as_json, std::ostream& out) {
  ClassFun f = parse_class_function(stat_text);
  Rat v = stable_inner(f, ClassFun::one());
  if (as_json) {
    json j;
    j["stat"] = to_string(f);
    j["value"] = rat_str(v);
    out << j.dump(2) << "\n";
  } else {
    out << rat_str(v) << "\n";
  }
  return 0;
}

int cmd_oracle(const std::string& word_text, const std::string& stat_text,
               int N, int rank_flag, std::uint64_t mc_samples,
               std::uint64_t seed, bool relax, bool as_json,
               std::ostream& out) {
  Word w = parse_word_arg(word_text, rank_flag);
  ClassFun f = parse_class_function(stat_text);
  if (N < 1) throw parse_error("N must be positive");
  json j;
  j["N"] = N;
  std::ostringstream text;
  if (mc_samples > 0) {
    McResult r = mc_expectation(w, f, N, mc_samples, seed);
    j["value"] = r.mean;
    j["stderr"] = r.stderr_;
    j["samples"] = r.samples;
    j["seed"] = seed;
    text << "N,value,stderr,samples,seed\n";
    text << N << "," << r.mean << "," << r.stderr_ << "," << r.samples << ","
         << seed << "\n";
  } else {
    ExactBudget budget;
    budget.relax = relax;
    Rat v = exact_expectation(w, f, N, budget);
    j["value"] = rat_str(v);
    j["exact"] = true;
    text << "N,value\n" << N << "," << rat_str(v) << "\n";
  }
  if (as_json)
    out << j.dump(2) << "\n";
  else
    out << text.str();
  return 0;
}

int cmd_conj(const std::string& u_text, const std::string& v_text,
             int rank_flag, bool as_json, std::ostream& out) {
  int rank = rank_flag > 0
                 ? rank_flag
                 : std::max(infer_rank(u_text), infer_rank(v_text));
  Word u = parse_word(u_text, rank);
  Word v = parse_word(v_text, rank);
  ConjugacyReport r = decide_conjugate(u, v);
  if (as_json) {
    json j;
    j["conjugate"] = r.conjugate;
    j["root_u"] = print_word(r.root_u);
    j["root_v"] = print_word(r.root_v);
    j["exp_u"] = r.exp_u;
    j["exp_v"] = r.exp_v;
    j["roots_conjugate"] = r.roots_conjugate;
    j["paired_cycle_count"] = r.paired_cycle_count;
    j["joint_cycle_count"] = r.joint_cycle_count;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "conjugate: " << yesno(r.conjugate) << "\n";
  out << "root(u) = " << print_word(r.root_u) << "^" << r.exp_u << "\n";
  out << "root(v) = " << print_word(r.root_v) << "^" << r.exp_v << "\n";
  out << "roots conjugate: " << yesno(r.roots_conjugate) << "\n";
  out << "paired cycles: " << r.paired_cycle_count
      << ", joint cycles: " << r.joint_cycle_count << "\n";
  return 0;
}

CoreGraph graph_of_flags(const std::string& word_text, int rank_flag,
                         const std::string& powers_text) {
  Word w = parse_word_arg(word_text, rank_flag);
  if (w.letters.empty()) throw parse_error("the trivial word has no cycle graph");
  CyclicReduction cr = cyclic_reduce(w);
  if (powers_text.empty()) return cycle_graph(cr.cyclic);
  return powers_graph(cr.cyclic, parse_int_list(powers_text));
}

int cmd_graph(const std::string& word_text, int rank_flag,
              const std::string& powers_text, const std::string& dot_path,
              bool as_json, std::ostream& out) {
  CoreGraph g = graph_of_flags(word_text, rank_flag, powers_text);
  GraphInvariants inv = graph_invariants(g);
  if (!dot_path.empty()) write_file(dot_path, dot_of(g));
  if (as_json) {
    json j = to_json(g);
    j["euler"] = inv.euler;
    j["components"] = inv.components;
    j["free_rank"] = inv.free_rank;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "vertices: " << g.num_vertices() << "\n";
  out << "edges: " << g.edges().size() << "\n";
  out << "euler: " << inv.euler << "\n";
  out << "components: " << inv.components << "\n";
  if (!dot_path.empty()) out << "dot written to " << dot_path << "\n";
  return 0;
}

int cmd_decomp(const std::string& word_text, int rank_flag,
               const std::string& powers_text, bool list, bool as_json,
               std::ostream& out) {
  CoreGraph g = graph_of_flags(word_text, rank_flag, powers_text);
  Morphism eta = make_morphism(g, bouquet(g.rank()),
                               std::vector<int>(g.num_vertices(), 0));
  ImageFactorization fac = image_factor(eta);
  PhiContext ctx;
  struct Row {
    Partition p;
    int chi = 0;
    bool algebraic = false;
  };
  std::vector<Row> rows;
  std::uint64_t count = for_each_decomposition(
      fac.onto,
      [&](const Partition& p) {
        if (!list) return;
        Decomposition d = realize_decomposition(fac.onto, p);
        Row r;
        r.p = p;
        r.chi = graph_invariants(d.first.cod).euler;
        r.algebraic = ctx.algebraic(d.first);
        rows.push_back(std::move(r));
      },
      ctx.limits());
  if (as_json) {
    json j;
    j["count"] = count;
    if (list) {
      json arr = json::array();
      for (const Row& r : rows) {
        json e;
        e["partition"] = r.p;
        e["chi"] = r.chi;
        e["algebraic"] = r.algebraic;
        arr.push_back(e);
      }
      j["decompositions"] = arr;
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "decompositions: " << count << "\n";
  for (const Row& r : rows) {
    out << "[";
    for (std::size_t i = 0; i < r.p.size(); ++i) {
      if (i) out << " ";
      out << r.p[i];
    }
    out << "] chi=" << r.chi << (r.algebraic ? " algebraic" : "") << "\n";
  }
  return 0;
}

int cmd_schreier(int r, int s, int N, int trials, std::uint64_t seed,
                 int trace_t, const std::string& spectrum_path, bool as_json,
                 std::ostream& out) {
  if (r < 1 || s < 1 || N < 1) throw parse_error("r, s, N must be positive");
  if (s > N) throw parse_error("s cannot exceed N");
  double bound = spectral_benchmark(2 * r, s);
  if (trials > 0) {
    BoundExperiment e = bound_experiment(r, s, {N}, trials, seed);
    if (as_json) {
      json j;
      j["r"] = r;
      j["s"] = s;
      j["N"] = N;
      j["bound"] = e.bound;
      j["pass_rate"] = e.pass_rate;
      json arr = json::array();
      for (const BoundTrial& t : e.trials) {
        json row;
        row["N"] = t.N;
        row["seed"] = t.seed;
        row["mu"] = t.mu;
        row["below"] = t.below;
        arr.push_back(row);
      }
      j["trials"] = arr;
      out << j.dump(2) << "\n";
    } else {
      out << bound_experiment_csv(e);
      out << "pass_rate = " << e.pass_rate << "\n";
    }
    return 0;
  }
  SchreierGraph g = build_schreier(r, s, N, seed);
  double mu = adjacency_mu(g);
  json j;
  j["r"] = r;
  j["s"] = s;
  j["N"] = N;
  j["vertices"] = g.num_vertices();
  j["seed"] = seed;
  j["mu"] = mu;
  j["bound"] = bound;
  j["below"] = mu <= bound;
  if (trace_t > 0) {
    TraceCheck tc = trace_identity_check(g, trace_t);
    std::ostringstream lhs, rhs;
    lhs << tc.lhs;
    rhs << tc.rhs;
    j["trace_t"] = trace_t;
    j["trace_lhs"] = lhs.str();
    j["trace_rhs"] = rhs.str();
    j["trace_equal"] = tc.equal;
  }
  if (!spectrum_path.empty()) {
    std::ostringstream csv;
    csv << "kind,index,re,im\n";
    std::vector<double> adj = adjacency_spectrum(g);
    for (std::size_t i = 0; i < adj.size(); ++i)
      csv << "adjacency," << i << "," << adj[i] << ",0\n";
    HashimotoSpectrum hs = hashimoto_spectrum(g);
    for (std::size_t i = 0; i < hs.values.size(); ++i)
      csv << "hashimoto," << i << "," << hs.values[i].real() << ","
          << hs.values[i].imag() << "\n";
    write_file(spectrum_path, csv.str());
    j["nu"] = hs.nu;
    j["ihara_bass_ok"] = hs.ihara_bass_ok;
    j["spectrum_file"] = spectrum_path;
  }
  if (as_json) {
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "vertices: " << g.num_vertices() << "\n";
  out << "mu = " << mu << "\n";
  out << "bound = " << bound << "\n";
  out << "below: " << yesno(mu <= bound) << "\n";
  if (trace_t > 0) {
    out << "tr(B^" << trace_t << ") = " << j["trace_lhs"].get<std::string>()
        << ", word sum = " << j["trace_rhs"].get<std::string>()
        << ", equal: " << yesno(j["trace_equal"].get<bool>()) << "\n";
  }
  if (!spectrum_path.empty())
    out << "spectrum written to " << spectrum_path << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::string& out,
            std::string& err) {
  std::ostringstream os, es;
  int code = 0;
  try {
    CLI::App app{"word measures on symmetric groups: exact expectations, "
                 "primitivity ranks, characters, and Schreier spectra"};
    app.require_subcommand(1);

    std::string word, stat, f_text, g_text, lambda, u_text, v_text;
    std::string eval_range, powers, dot_path, spectrum_path;
    int rank_flag = 0, laurent_order = -1, N = 0;
    int sch_r = 0, sch_s = 0, trials = 0, trace_t = 0;
    std::uint64_t mc_samples = 0, seed = 0;
    bool as_json = false, relax = false, list = false;

    auto* expect = app.add_subcommand("expect", "expectation of a stat");
    expect->add_option("--word", word)->required();
    expect->add_option("--stat", stat)->required();
    expect->add_option("--rank", rank_flag);
    expect->add_option("--laurent", laurent_order);
    expect->add_option("--eval", eval_range);
    expect->add_flag("--json", as_json);

    auto* pirank = app.add_subcommand("pirank", "primitivity rank");
    pirank->add_option("--word", word)->required();
    pirank->add_option("--rank", rank_flag);
    pirank->add_flag("--json", as_json);

    auto* inner = app.add_subcommand("inner", "stable inner product");
    inner->add_option("--f", f_text)->required();
    inner->add_option("--g", g_text)->required();
    inner->add_flag("--json", as_json);

    auto* irreducible =
        app.add_subcommand("irreducible", "stable irreducible character");
    irreducible->add_option("--lambda", lambda)->required();
    irreducible->add_flag("--json", as_json);

    auto* unif = app.add_subcommand("unif", "uniform baseline of a stat");
    unif->add_option("--stat", stat)->required();
    unif->add_flag("--json", as_json);

    auto* oracle = app.add_subcommand("oracle", "brute force / monte carlo");
    oracle->add_option("--word", word)->required();
    oracle->add_option("--stat", stat)->required();
    oracle->add_option("--N", N)->required();
    oracle->add_option("--rank", rank_flag);
    oracle->add_option("--mc", mc_samples);
    oracle->add_option("--seed", seed);
    oracle->add_flag("--relax", relax);
    oracle->add_flag("--json", as_json);

    auto* conj = app.add_subcommand("conj", "conjugacy decision");
    conj->add_option("--u", u_text)->required();
    conj->add_option("--v", v_text)->required();
    conj->add_option("--rank", rank_flag);
    conj->add_flag("--json", as_json);

    auto* graph = app.add_subcommand("graph", "cycle / powers graph");
    graph->add_option("--word", word)->required();
    graph->add_option("--rank", rank_flag);
    graph->add_option("--powers", powers);
    graph->add_option("--dot", dot_path);
    graph->add_flag("--json", as_json);

    auto* schreier = app.add_subcommand("schreier", "random action graphs");
    schreier->add_option("--r", sch_r)->required();
    schreier->add_option("--s", sch_s)->required();
    schreier->add_option("--N", N)->required();
    schreier->add_option("--trials", trials);
    schreier->add_option("--seed", seed);
    schreier->add_option("--trace", trace_t);
    schreier->add_option("--spectrum", spectrum_path);
    schreier->add_flag("--json", as_json);

    auto* decomp = app.add_subcommand("decomp", "two-step factorizations");
    decomp->add_option("--word", word)->required();
    decomp->add_option("--rank", rank_flag);
    decomp->add_option("--powers", powers);
    decomp->add_flag("--list", list);
    decomp->add_flag("--json", as_json);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(rev);
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) {
        // --help and friends
        os << app.help();
        out = os.str();
        err = es.str();
        return 0;
      }
      es << "error: " << e.what() << "\n";
      out = os.str();
      err = es.str();
      return 2;
    }

    if (expect->parsed())
      code = cmd_expect(word, stat, rank_flag, laurent_order, eval_range,
                        as_json, os);
    else if (pirank->parsed())
      code = cmd_pirank(word, rank_flag, as_json, os);
    else if (inner->parsed())
      code = cmd_inner(f_text, g_text, as_json, os);
    else if (irreducible->parsed())
      code = cmd_irreducible(lambda, as_json, os);
    else if (unif->parsed())
      code = cmd_unif(stat, as_json, os);
    else if (oracle->parsed())
      code = cmd_oracle(word, stat, N, rank_flag, mc_samples, seed, relax,
                        as_json, os);
    else if (conj->parsed())
      code = cmd_conj(u_text, v_text, rank_flag, as_json, os);
    else if (graph->parsed())
      code = cmd_graph(word, rank_flag, powers, dot_path, as_json, os);
    else if (schreier->parsed())
      code = cmd_schreier(sch_r, sch_s, N, trials, seed, trace_t,
                          spectrum_path, as_json, os);
    else if (decomp->parsed())
      code = cmd_decomp(word, rank_flag, powers, list, as_json, os);
  } catch (const parse_error& e) {
    es << "parse error: " << e.what() << "\n";
    code = 2;
  } catch (const budget_error& e) {
    es << "budget exceeded: " << e.what() << "\n";
    code = 3;
  } catch (const internal_error& e) {
    es << "internal error: " << e.what() << "\n";
    code = 4;
  } catch (const std::exception& e) {
    es << "internal error: " << e.what() << "\n";
    code = 4;
  }
  out = os.str();
  err = es.str();
  return code;
}

int run_cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  std::string out, err;
  int code = run_cli(args, out, err);
  std::cout << out;
  std::cerr << err;
  return code;
}

}  // namespace wm
