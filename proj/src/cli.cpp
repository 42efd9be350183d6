#include "satrev/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <json.hpp>
#include <optional>
#include <string>

#include "satrev/agm.hpp"
#include "satrev/io.hpp"
#include "satrev/ops.hpp"
#include "satrev/revision.hpp"

namespace satrev::cli {

namespace {

using json = nlohmann::json;
using io::Document;
using io::Logic;

constexpr int kSchema = 1;

struct Common {
  std::optional<int> bound;
  std::string format = "text";
  std::string config_path;
  int seed = 0;  // reserved; no randomized behavior yet

  bool json_mode() const { return format == "json"; }
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--bound", common.bound, "Model bound for FOL/DL (overrides the document)");
  cmd->add_option("--format", common.format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--config", common.config_path, "Run configuration file");
  cmd->add_option("--seed", common.seed, "Reserved");
}

int resolve_bound(const Common& common, const Document& doc) {
  if (common.bound) return *common.bound;
  if (const char* env = std::getenv("RV_BOUND")) return std::atoi(env);
  if (doc.bound) return *doc.bound;
  return 3;
}

// ---------------------------------------------------------------------------
// model rendering

json valuation_json(const pl::Signature& sig, const pl::Valuation& v) {
  json out = json::object();
  for (std::size_t i = 0; i < sig.atoms.size(); ++i)
    out[sig.atoms[i]] = v.value(static_cast<int>(i)) ? 1 : 0;
  return out;
}

std::string valuation_text(const pl::Signature& sig, const pl::Valuation& v) {
  std::string out;
  for (std::size_t i = 0; i < sig.atoms.size(); ++i) {
    if (i) out += ' ';
    out += sig.atoms[i] + "=" + (v.value(static_cast<int>(i)) ? "1" : "0");
  }
  return out;
}

json structure_json(const fol::Signature& sig, const fol::Structure& m) {
  json out = json::object();
  json carriers = json::object();
  for (std::size_t s = 0; s < sig.sorts.size(); ++s) carriers[sig.sorts[s]] = m.carriers[s];
  out["carriers"] = carriers;
  json preds = json::object();
  for (std::size_t p = 0; p < sig.preds.size(); ++p) {
    json tuples = json::array();
    std::vector<int> dims;
    for (int a : sig.preds[p].args) dims.push_back(m.carriers[static_cast<std::size_t>(a)]);
    std::size_t entries = m.preds[p].size();
    for (std::size_t e = 0; e < entries; ++e) {
      if (!m.preds[p][e]) continue;
      json tuple = json::array();
      std::size_t rem = e;
      std::vector<int> idx(dims.size());
      for (std::size_t d = dims.size(); d-- > 0;) {
        idx[d] = static_cast<int>(rem % static_cast<std::size_t>(dims[d]));
        rem /= static_cast<std::size_t>(dims[d]);
      }
      for (int i : idx) tuple.push_back(i);
      tuples.push_back(tuple);
    }
    preds[sig.preds[p].name] = tuples;
  }
  out["preds"] = preds;
  json funcs = json::object();
  for (std::size_t f = 0; f < sig.funcs.size(); ++f)
    funcs[sig.funcs[f].name] = m.funcs[f];
  out["funcs"] = funcs;
  return out;
}

json interpretation_json(const dl::Signature& sig, const dl::Interpretation& i) {
  json out = json::object();
  out["domain"] = i.n;
  json concepts = json::object();
  for (std::size_t c = 0; c < sig.concepts.size(); ++c) {
    json members = json::array();
    for (int d = 0; d < i.n; ++d)
      if ((i.concepts[c] >> d) & 1u) members.push_back(d);
    concepts[sig.concepts[c]] = members;
  }
  out["concepts"] = concepts;
  json roles = json::object();
  for (std::size_t r = 0; r < sig.roles.size(); ++r) {
    json pairs = json::array();
    for (int x = 0; x < i.n; ++x)
      for (int y = 0; y < i.n; ++y)
        if ((i.roles[r] >> (x * i.n + y)) & 1u) pairs.push_back(json::array({x, y}));
    roles[sig.roles[r]] = pairs;
  }
  out["roles"] = roles;
  json indivs = json::object();
  for (std::size_t a = 0; a < sig.individuals.size(); ++a)
    indivs[sig.individuals[a]] = i.individuals[a];
  out["individuals"] = indivs;
  return out;
}

// ---------------------------------------------------------------------------
// per-logic plumbing

pl::System make_pl(const Document& doc) { return pl::System{doc.pl_sig}; }
horn::System make_horn(const Document& doc) { return horn::System{doc.horn_sig}; }
fol::System make_fol(const Document& doc, int bound) { return fol::System{doc.fol_sig, bound}; }
dl::System make_dl(const Document& doc, int bound) {
  dl::Options options;
  options.allow_empty_domain = doc.allow_empty_domain;
  options.nonempty_concepts = doc.nonempty_concepts;
  return dl::System{doc.dl_sig, doc.fragment, bound, options};
}

template <class S, class Sentence>
KnowledgeBase<Sentence> to_kb(const std::vector<Sentence>& sentences) {
  return KnowledgeBase<Sentence>(sentences);
}

template <class S>
json kb_json(const S& sys, const KBOf<S>& kb) {
  json out = json::array();
  for (const auto& s : kb) out.push_back(sys.sentence_text(s));
  return out;
}

// exceptions judged against the new knowledge for relaxations and against
// the old base for retractions
dl::ExceptionSet dl_exceptions(const Document& old_doc, const std::string& op,
                               const std::vector<dl::Axiom>* old_axioms,
                               const std::vector<dl::Axiom>* new_axioms) {
  dl::ExceptionSet es;
  es.exceptions = old_doc.exceptions;
  const std::vector<dl::Axiom>* ctx =
      op.rfind("kappa", 0) == 0 ? old_axioms : new_axioms;
  if (ctx)
    for (const auto& ax : *ctx) es.context.add(ax);
  return es;
}

struct CliState {
  Common& common;
  std::ostream& out;
  std::ostream& err;
  std::optional<int> bound;  // set for the bounded logics, echoed in reports
};

template <class S>
int emit_models(CliState& state, const S& sys, const Bitset& mods,
                const std::function<json(std::size_t)>& to_json,
                const std::function<std::string(std::size_t)>& to_text, long limit) {
  if (state.common.json_mode()) {
    json payload;
    payload["schema"] = kSchema;
    if (state.bound) payload["bound"] = *state.bound;
    payload["count"] = mods.count();
    json arr = json::array();
    long emitted = 0;
    mods.for_each_set([&](std::size_t i) {
      if (limit > 0 && emitted >= limit) return;
      arr.push_back(to_json(i));
      ++emitted;
    });
    payload["models"] = arr;
    state.out << payload.dump(2) << "\n";
  } else {
    state.out << "models: " << mods.count() << "\n";
    long emitted = 0;
    mods.for_each_set([&](std::size_t i) {
      if (limit > 0 && emitted >= limit) return;
      state.out << to_text(i) << "\n";
      ++emitted;
    });
  }
  (void)sys;
  return 0;
}

template <class S>
int run_models(CliState& state, const S& sys, const KBOf<S>& kb,
               const std::function<json(std::size_t)>& to_json,
               const std::function<std::string(std::size_t)>& to_text, long limit) {
  Bitset mods = models_of(sys, kb);
  return emit_models(state, sys, mods, to_json, to_text, limit);
}

int run_consistent(CliState& state, bool value) {
  if (state.common.json_mode()) {
    json payload;
    payload["schema"] = kSchema;
    if (state.bound) payload["bound"] = *state.bound;
    payload["consistent"] = value;
    state.out << payload.dump(2) << "\n";
  } else {
    state.out << (value ? "true" : "false") << "\n";
  }
  return 0;
}

int run_entails(CliState& state, bool value) {
  if (state.common.json_mode()) {
    json payload;
    payload["schema"] = kSchema;
    if (state.bound) payload["bound"] = *state.bound;
    payload["entails"] = value;
    state.out << payload.dump(2) << "\n";
  } else {
    state.out << (value ? "true" : "false") << "\n";
  }
  return 0;
}

template <class S>
int run_relax(CliState& state, const S& sys, const Relaxation<S>& rho, const KBOf<S>& kb,
              int k) {
  KBOf<S> relaxed = kb;
  RelaxationVector vec(kb.size(), k);
  relaxed = apply_vector(rho, kb, vec);
  if (state.common.json_mode()) {
    json payload;
    payload["schema"] = kSchema;
    if (state.bound) payload["bound"] = *state.bound;
    payload["op"] = rho.name;
    payload["k"] = k;
    payload["sentences"] = kb_json(sys, relaxed);
    state.out << payload.dump(2) << "\n";
  } else {
    for (const auto& s : relaxed) state.out << sys.sentence_text(s) << "\n";
  }
  return 0;
}

template <class S>
int run_revise(CliState& state, const S& sys, const Relaxation<S>& rho, const KBOf<S>& old_kb,
               const KBOf<S>& new_kb, const RevisionConfig& config) {
  RevisionResult<S> result = revise(sys, old_kb, new_kb, rho, config);
  if (state.common.json_mode()) {
    json payload;
    payload["schema"] = kSchema;
    if (state.bound) payload["bound"] = *state.bound;
    payload["op"] = rho.name;
    payload["mode"] = to_string(result.mode);
    payload["vector"] = result.vector;
    json candidates = json::array();
    for (const auto& c : result.candidates) candidates.push_back(c);
    payload["candidates"] = candidates;
    payload["revised"] = kb_json(sys, result.revised);
    payload["flags"] = {{"new_inconsistent", result.new_inconsistent},
                        {"old_inconsistent", result.old_inconsistent},
                        {"capped", result.capped}};
    state.out << payload.dump(2) << "\n";
  } else {
    state.out << "mode: " << to_string(result.mode) << "\n";
    state.out << "vector:";
    for (int k : result.vector) state.out << " " << k;
    state.out << "\nrevised:\n";
    for (const auto& s : result.revised) state.out << "  " << sys.sentence_text(s) << "\n";
    if (result.new_inconsistent) state.out << "note: new knowledge inconsistent\n";
    if (result.old_inconsistent) state.out << "note: old base inconsistent\n";
  }
  return 0;
}

json stat_json(const agm::CheckStat& stat, const agm::Corpus<pl::System>& corpus,
               const pl::System& sys, std::size_t max_failures = 10) {
  json out;
  out["postulate"] = stat.name;
  out["checked"] = stat.checked;
  out["passed"] = stat.passed;
  out["status"] = stat.checked == stat.passed ? "holds" : "fails";
  json failures = json::array();
  for (std::size_t i = 0; i < stat.failures.size() && i < max_failures; ++i) {
    const auto& f = stat.failures[i];
    json fx;
    fx["t"] = kb_json(sys, corpus.kbs[f.t]);
    fx["t_prime"] = kb_json(sys, corpus.kbs[f.tp]);
    if (f.tpp != SIZE_MAX) fx["t_second"] = kb_json(sys, corpus.kbs[f.tpp]);
    fx["detail"] = f.detail;
    failures.push_back(fx);
  }
  out["counterexamples"] = failures;
  return out;
}

int run_check_agm(CliState& state, const io::RunConfig& config, int atoms, int sentences,
                  int depth) {
  if (config.get("logic", "pl") != "pl")
    throw Error::usage("check-agm currently drives propositional operators only");
  std::string op_name = config.get("op", "hamming");
  std::string mode_name = config.get("mode", "coherent");
  Mode mode = mode_name == "minimal" ? Mode::Minimal : Mode::Coherent;

  std::vector<std::string> names = {"p", "q", "r", "t", "u"};
  if (atoms < 1 || atoms > static_cast<int>(names.size()))
    throw Error::usage("check-agm supports 1 to 5 atoms");
  pl::Signature sig;
  sig.atoms.assign(names.begin(), names.begin() + atoms);
  pl::System sys(sig);

  auto pool = pl::sentence_pool(sig, depth);
  auto corpus = agm::subsets_corpus<pl::System>(pool, static_cast<std::size_t>(sentences));

  // the dilation cannot leave an empty model set, so bases with an
  // unsatisfiable member are outside the operator's domain
  std::size_t skipped = 0;
  agm::Corpus<pl::System> usable;
  for (const auto& kb : corpus.kbs) {
    bool ok = true;
    for (const auto& s : kb)
      if (sys.sentence_models(s).none()) ok = false;
    if (ok)
      usable.kbs.push_back(kb);
    else
      ++skipped;
  }

  auto rho = ops::pl_relaxation(sys, op_name);
  RevisionConfig rev_config;
  rev_config.mode = mode;
  agm::RevisionOperator<pl::System> op{
      op_name + "_" + mode_name, [&sys, rho, rev_config](const pl::KB& t, const pl::KB& tp) {
        return revise(sys, t, tp, rho, rev_config).revised;
      }};

  auto report = agm::check_postulates(sys, op, usable);
  auto derivation = agm::check_g4_derivation(sys, op, usable);

  if (state.common.json_mode()) {
    json payload;
    payload["schema"] = kSchema;
    payload["operator"] = op.name;
    payload["atoms"] = atoms;
    payload["sentences"] = sentences;
    payload["depth"] = depth;
    payload["bases"] = usable.kbs.size();
    payload["skipped_bases"] = skipped;
    json stats = json::array();
    for (const auto& stat : report.stats) stats.push_back(stat_json(stat, usable, sys));
    payload["postulates"] = stats;
    payload["g4_derivation"] = stat_json(derivation, usable, sys);
    state.out << payload.dump(2) << "\n";
  } else {
    state.out << "operator: " << op.name << " over " << usable.kbs.size()
              << " knowledge bases\n";
    for (const auto& stat : report.stats)
      state.out << "  " << stat.name << ": " << stat.passed << "/" << stat.checked
                << (stat.passed == stat.checked ? " holds" : " FAILS") << "\n";
    state.out << "  G4-derivation: " << derivation.passed << "/" << derivation.checked
              << (derivation.passed == derivation.checked ? " holds" : " FAILS") << "\n";
  }
  return 0;
}

// dispatches one loaded document to the per-logic lambda
template <class F>
int with_system(CliState& state, const Document& doc, F&& f) {
  int bound = resolve_bound(state.common, doc);
  if (doc.logic == Logic::FOL || doc.logic == Logic::DL) state.bound = bound;
  switch (doc.logic) {
    case Logic::PL: {
      pl::System sys = make_pl(doc);
      return f(sys, pl::KB(doc.pl_sentences), doc);
    }
    case Logic::HCL: {
      horn::System sys = make_horn(doc);
      return f(sys, horn::KB(doc.horn_sentences), doc);
    }
    case Logic::FOL: {
      fol::System sys = make_fol(doc, bound);
      return f(sys, fol::KB(doc.fol_sentences), doc);
    }
    case Logic::DL: {
      dl::System sys = make_dl(doc, bound);
      return f(sys, dl::KB(doc.dl_axioms), doc);
    }
  }
  return 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"satrev: relaxation-based belief revision over bounded logics"};
  app.require_subcommand(1);

  Common common;
  CliState state{common, out, err};

  std::string kb_path, kb2_path, sentence_text, op_name = "trivial", mode_name = "minimal";
  std::string context_path;
  int k = 1, atoms = 1, sentences = 2, depth = 2;
  long limit = 0;
  bool allow_non_exhaustive = false;

  auto* models = app.add_subcommand("models", "Enumerate the models of a knowledge base");
  models->add_option("kb", kb_path, "Knowledge base file")->required();
  models->add_option("--limit", limit, "Print at most this many models (0 = all)");
  add_common(models, common);

  auto* consistent = app.add_subcommand("consistent", "Consistency of a knowledge base");
  consistent->add_option("kb", kb_path)->required();
  add_common(consistent, common);

  auto* entails = app.add_subcommand("entails", "Does the base entail the sentence?");
  entails->add_option("kb", kb_path)->required();
  entails->add_option("sentence", sentence_text)->required();
  add_common(entails, common);

  auto* relax = app.add_subcommand("relax", "Apply a named relaxation k times");
  relax->add_option("kb", kb_path)->required();
  relax->add_option("--op", op_name, "Relaxation name")->required();
  relax->add_option("--k", k, "Number of applications");
  relax->add_option("--context", context_path, "Context base for exception eligibility");
  add_common(relax, common);

  auto* revise_cmd = app.add_subcommand("revise", "Revise an old base by a new one");
  revise_cmd->add_option("old", kb_path)->required();
  revise_cmd->add_option("new", kb2_path)->required();
  revise_cmd->add_option("--op", op_name, "Relaxation name")->required();
  revise_cmd->add_option("--mode", mode_name, "minimal or coherent")
      ->check(CLI::IsMember({"minimal", "coherent"}));
  revise_cmd->add_flag("--allow-non-exhaustive", allow_non_exhaustive,
                       "Admit relaxations without the exhaustive tag");
  add_common(revise_cmd, common);

  std::string check_config_path;
  auto* check = app.add_subcommand("check-agm", "Verify AGM postulates on a tiny corpus");
  check->add_option("operator-config", check_config_path, "Operator configuration file")
      ->required();
  check->add_option("--atoms", atoms, "Signature size");
  check->add_option("--sentences", sentences, "Maximum sentences per base");
  check->add_option("--depth", depth, "Sentence pool depth");
  add_common(check, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (models->parsed() || consistent->parsed() || entails->parsed()) {
      Document doc = io::load_document(kb_path);
      return with_system(state, doc, [&](auto& sys, auto kb, const Document& d) -> int {
        using Sys = std::decay_t<decltype(sys)>;
        if (consistent->parsed()) return run_consistent(state, is_consistent(sys, kb));
        if (entails->parsed()) {
          typename Sys::Sentence s = [&] {
            if constexpr (std::is_same_v<Sys, pl::System>)
              return pl::parse_sentence(d.pl_sig, sentence_text);
            else if constexpr (std::is_same_v<Sys, horn::System>)
              return horn::parse_sentence(d.horn_sig, sentence_text);
            else if constexpr (std::is_same_v<Sys, fol::System>)
              return fol::parse_sentence(d.fol_sig, sentence_text);
            else
              return dl::parse_axiom(d.dl_sig, sentence_text);
          }();
          return run_entails(state, satrev::entails(sys, kb, s));
        }
        // models
        std::function<json(std::size_t)> to_json;
        std::function<std::string(std::size_t)> to_text;
        if constexpr (std::is_same_v<Sys, pl::System> || std::is_same_v<Sys, horn::System>) {
          const auto& sig = std::is_same_v<Sys, pl::System> ? d.pl_sig : d.horn_sig;
          to_json = [&sys, sig](std::size_t i) { return valuation_json(sig, sys.model_at(i)); };
          to_text = [&sys, sig](std::size_t i) { return valuation_text(sig, sys.model_at(i)); };
        } else if constexpr (std::is_same_v<Sys, fol::System>) {
          to_json = [&sys, &d](std::size_t i) {
            return structure_json(d.fol_sig, sys.model_at(i));
          };
          to_text = [&sys, &d](std::size_t i) {
            return structure_json(d.fol_sig, sys.model_at(i)).dump();
          };
        } else {
          to_json = [&sys, &d](std::size_t i) {
            return interpretation_json(d.dl_sig, sys.model_at(i));
          };
          to_text = [&sys, &d](std::size_t i) {
            return interpretation_json(d.dl_sig, sys.model_at(i)).dump();
          };
        }
        return run_models(state, sys, kb, to_json, to_text, limit);
      });
    }

    if (relax->parsed()) {
      Document doc = io::load_document(kb_path);
      std::optional<Document> context;
      if (!context_path.empty()) context = io::load_document(context_path);
      return with_system(state, doc, [&](auto& sys, auto kb, const Document& d) -> int {
        using Sys = std::decay_t<decltype(sys)>;
        if constexpr (std::is_same_v<Sys, pl::System>)
          return run_relax(state, sys, ops::pl_relaxation(sys, op_name), kb, k);
        else if constexpr (std::is_same_v<Sys, horn::System>)
          return run_relax(state, sys, ops::horn_relaxation(sys, op_name), kb, k);
        else if constexpr (std::is_same_v<Sys, fol::System>)
          return run_relax(state, sys, ops::fol_relaxation(sys, op_name), kb, k);
        else {
          const std::vector<dl::Axiom>* ctx_axioms =
              context && context->logic == Logic::DL ? &context->dl_axioms : nullptr;
          dl::ExceptionSet es = dl_exceptions(d, op_name, ctx_axioms, ctx_axioms);
          return run_relax(state, sys, ops::dl_relaxation(sys, op_name, es), kb, k);
        }
      });
    }

    if (revise_cmd->parsed()) {
      Document old_doc = io::load_document(kb_path);
      Document new_doc = io::load_document(kb2_path);
      if (old_doc.logic != new_doc.logic)
        throw Error::usage("the two knowledge bases use different logics");
      RevisionConfig config;
      config.mode = mode_name == "coherent" ? Mode::Coherent : Mode::Minimal;
      config.allow_non_exhaustive = allow_non_exhaustive;
      return with_system(state, old_doc, [&](auto& sys, auto old_kb, const Document& d) -> int {
        using Sys = std::decay_t<decltype(sys)>;
        if constexpr (std::is_same_v<Sys, pl::System>) {
          return run_revise(state, sys, ops::pl_relaxation(sys, op_name), old_kb,
                            pl::KB(new_doc.pl_sentences), config);
        } else if constexpr (std::is_same_v<Sys, horn::System>) {
          return run_revise(state, sys, ops::horn_relaxation(sys, op_name), old_kb,
                            horn::KB(new_doc.horn_sentences), config);
        } else if constexpr (std::is_same_v<Sys, fol::System>) {
          return run_revise(state, sys, ops::fol_relaxation(sys, op_name), old_kb,
                            fol::KB(new_doc.fol_sentences), config);
        } else {
          dl::ExceptionSet es =
              dl_exceptions(d, op_name, &d.dl_axioms, &new_doc.dl_axioms);
          return run_revise(state, sys, ops::dl_relaxation(sys, op_name, es), old_kb,
                            dl::KB(new_doc.dl_axioms), config);
        }
      });
    }

    if (check->parsed()) {
      io::RunConfig config = io::RunConfig::load(check_config_path);
      return run_check_agm(state, config, atoms, sentences, depth);
    }
  } catch (const Error& e) {
    if (common.json_mode()) {
      json payload;
      payload["schema"] = kSchema;
      payload["error"] = {{"kind", static_cast<int>(e.kind())}, {"message", e.what()}};
      err << payload.dump(2) << "\n";
    } else {
      err << "error: " << e.what() << "\n";
    }
    return static_cast<int>(e.kind());
  }
  return 1;
}

}  // namespace satrev::cli
