#include "satrev/ops.hpp"

#include <algorithm>

#include "satrev/error.hpp"

namespace satrev::ops {

namespace {

[[noreturn]] void unknown(const std::string& logic, const std::string& name) {
  throw Error::usage("unknown relaxation '" + name + "' for logic " + logic);
}

void split_or(const dl::Concept& c, std::vector<dl::Concept>& out) {
  if (c.kind() == dl::Concept::Kind::Or) {
    split_or(c.lhs(), out);
    split_or(c.rhs(), out);
  } else {
    out.push_back(c);
  }
}

void split_and(const dl::Concept& c, std::vector<dl::Concept>& out) {
  if (c.kind() == dl::Concept::Kind::And) {
    split_and(c.lhs(), out);
    split_and(c.rhs(), out);
  } else {
    out.push_back(c);
  }
}

dl::Concept fold_or(const std::vector<dl::Concept>& cs) {
  std::optional<dl::Concept> acc;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (std::find(cs.begin(), cs.begin() + static_cast<long>(i), cs[i]) !=
        cs.begin() + static_cast<long>(i))
      continue;  // dedup
    acc = acc ? dl::Concept::disj(std::move(*acc), cs[i]) : cs[i];
  }
  return acc ? *acc : dl::Concept::bot();
}

dl::Concept fold_and(const std::vector<dl::Concept>& cs) {
  std::optional<dl::Concept> acc;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (std::find(cs.begin(), cs.begin() + static_cast<long>(i), cs[i]) !=
        cs.begin() + static_cast<long>(i))
      continue;
    acc = acc ? dl::Concept::conj(std::move(*acc), cs[i]) : cs[i];
  }
  return acc ? *acc : dl::Concept::top();
}

}  // namespace

dl::Concept rho_q_staged(const dl::Concept& c) {
  std::vector<dl::Concept> blocks;
  split_or(c, blocks);
  std::vector<dl::Concept> out;
  for (const auto& b : blocks) {
    bool stuck = false;
    dl::Concept flipped = dl::rho_q(b, &stuck);
    if (!stuck) {
      split_or(flipped, out);
    } else {
      out.push_back(dl::rho_dalal(b));  // no universal left: dilate the matrix
    }
  }
  return fold_or(out);
}

dl::Concept kappa_q_blocks(const dl::Concept& c) {
  std::vector<dl::Concept> blocks;
  split_and(c, blocks);
  std::vector<dl::Concept> out;
  for (const auto& b : blocks) {
    bool stuck = false;
    dl::Concept flipped = dl::kappa_q(b, &stuck);
    if (!stuck)
      split_and(flipped, out);
    else
      out.push_back(b);
  }
  return fold_and(out);
}

// ---------------------------------------------------------------------------
// Sentence-level registries

Relaxation<pl::System> pl_relaxation(const pl::System& sys, const std::string& name) {
  if (name == "hamming")
    return {"hamming", true, [&sys](const pl::Sentence& s) { return pl::dilate(sys, s); }};
  if (name == "trivial") return trivial_relaxation(sys);
  unknown("pl", name);
}

Relaxation<horn::System> horn_relaxation(const horn::System& sys, const std::string& name) {
  if (name == "horn_relax")
    return {"horn_relax", true, [&sys](const horn::Sentence& s) { return horn::relax(sys, s); }};
  if (name == "trivial") return trivial_relaxation(sys);
  unknown("hcl", name);
}

Relaxation<fol::System> fol_relaxation(const fol::System& sys, const std::string& name) {
  if (name == "quantifier_flip")
    return {"quantifier_flip", true,
            [&sys](const fol::Sentence& s) { return fol::relax(sys.signature(), s); }};
  if (name == "trivial") return trivial_relaxation(sys);
  unknown("fol", name);
}

std::vector<std::string> pl_names() { return {"hamming", "trivial"}; }
std::vector<std::string> horn_names() { return {"horn_relax", "trivial"}; }
std::vector<std::string> fol_names() { return {"quantifier_flip", "trivial"}; }
std::vector<std::string> dl_names() {
  return {"rho_top",    "kappa_bot",        "rho_depth", "rho_leaves", "rho_e",
          "rho_exceptions", "kappa_exceptions", "rho_dalal", "kappa_dalal", "rho_cup",
          "kappa_cap",  "rho_q",            "kappa_q",   "trivial"};
}

namespace {

// Bot is a fixed point of the tree operators; other inputs are normalized
// first so the trees never see Bot inside a conjunct.
dl::Concept tree_op_guarded(const dl::System& sys, const dl::Concept& c, bool depth) {
  if (c == dl::Concept::bot()) return c;
  dl::Concept n = dl::normalize_grouping(sys, c);
  if (n == dl::Concept::bot()) return n;
  return depth ? dl::rho_depth(sys.signature(), n) : dl::rho_leaves(sys.signature(), n);
}

}  // namespace

std::vector<ConceptOp> concept_catalog(const dl::System& sys, const dl::ExceptionSet& es) {
  std::vector<ConceptOp> out;
  out.push_back({"rho_top", false, true, false, false, dl::Fragment::ALC,
                 [](const dl::Concept& c) { return dl::rho_top(c); }});
  out.push_back({"kappa_bot", true, true, false, false, dl::Fragment::ALC,
                 [](const dl::Concept& c) { return dl::kappa_bot(c); }});
  out.push_back({"rho_depth", false, true, false, false, dl::Fragment::EL,
                 [&sys](const dl::Concept& c) { return tree_op_guarded(sys, c, true); }});
  out.push_back({"rho_leaves", false, true, false, false, dl::Fragment::EL,
                 [&sys](const dl::Concept& c) { return tree_op_guarded(sys, c, false); }});
  out.push_back({"rho_e", false, true, false, false, dl::Fragment::ELU,
                 [&sys](const dl::Concept& c) { return dl::rho_e(sys, c); }});
  out.push_back({"rho_exceptions", false, false, false, false, dl::Fragment::ELU,
                 [&sys, es](const dl::Concept& c) {
                   return dl::rho_exceptions(sys, c, es, 1, nullptr);
                 }});
  if (sys.fragment() == dl::Fragment::ALC) {
    out.push_back({"kappa_exceptions", true, false, false, false, dl::Fragment::ALC,
                   [&sys, es](const dl::Concept& c) {
                     return dl::kappa_exceptions(sys, c, es);
                   }});
    out.push_back({"kappa_cap", true, false, false, true, dl::Fragment::ALC,
                   [&sys, es](const dl::Concept& c) { return dl::kappa_cap(sys, c, es); }});
  }
  out.push_back({"rho_dalal", false, true, true, true, dl::Fragment::ALC,
                 [](const dl::Concept& c) { return dl::rho_dalal(c); }});
  out.push_back({"kappa_dalal", true, true, true, true, dl::Fragment::ALC,
                 [](const dl::Concept& c) { return dl::kappa_dalal(c); }});
  out.push_back({"rho_cup", false, false, false, true, dl::Fragment::ELU,
                 [&sys, es](const dl::Concept& c) { return dl::rho_cup(sys, c, es); }});
  out.push_back({"rho_q", false, true, true, true, dl::Fragment::ALC,
                 [](const dl::Concept& c) { return rho_q_staged(c); }});
  out.push_back({"kappa_q", true, false, true, true, dl::Fragment::ALC,
                 [](const dl::Concept& c) { return kappa_q_blocks(c); }});
  return out;
}

Relaxation<dl::System> dl_relaxation(const dl::System& sys, const std::string& name,
                                     const dl::ExceptionSet& es) {
  using dl::Axiom;
  auto right = [&sys](std::function<dl::Concept(const dl::Concept&)> f) {
    return [&sys, f](const Axiom& ax) { return dl::formula_relax_right(sys, f, ax); };
  };
  auto left = [&sys](std::function<dl::Concept(const dl::Concept&)> f) {
    return [&sys, f](const Axiom& ax) { return dl::formula_relax_left(sys, f, ax); };
  };

  if (name == "trivial") return trivial_relaxation(sys);
  if (name == "rho_top")
    return {name, true, right([](const dl::Concept& c) { return dl::rho_top(c); })};
  if (name == "kappa_bot")
    return {name, true, left([](const dl::Concept& c) { return dl::kappa_bot(c); })};
  if (name == "rho_depth")
    return {name, true,
            right([&sys](const dl::Concept& c) { return tree_op_guarded(sys, c, true); })};
  if (name == "rho_leaves")
    return {name, true,
            right([&sys](const dl::Concept& c) { return tree_op_guarded(sys, c, false); })};
  if (name == "rho_e")
    return {name, true, right([&sys](const dl::Concept& c) { return dl::rho_e(sys, c); })};
  if (name == "rho_exceptions")
    return {name, false, right([&sys, es](const dl::Concept& c) {
              return dl::rho_exceptions(sys, c, es, 1, nullptr);
            })};
  if (name == "kappa_exceptions")
    return {name, false, left([&sys, es](const dl::Concept& c) {
              return dl::kappa_exceptions(sys, c, es);
            })};
  if (name == "rho_dalal")
    return {name, true, right([](const dl::Concept& c) { return dl::rho_dalal(c); })};
  if (name == "kappa_dalal")
    return {name, true, left([](const dl::Concept& c) { return dl::kappa_dalal(c); })};
  if (name == "rho_cup")
    return {name, false,
            right([&sys, es](const dl::Concept& c) { return dl::rho_cup(sys, c, es); })};
  if (name == "kappa_cap")
    return {name, false,
            left([&sys, es](const dl::Concept& c) { return dl::kappa_cap(sys, c, es); })};
  if (name == "rho_q")
    return {name, true, right([](const dl::Concept& c) { return rho_q_staged(c); })};
  if (name == "kappa_q")
    return {name, false, left([](const dl::Concept& c) { return kappa_q_blocks(c); })};
  unknown("dl", name);
}

}  // namespace satrev::ops
