#pragma once

#include <concepts>
#include <cstddef>
#include <string>

#include "satrev/error.hpp"
#include "satrev/bitset.hpp"
#include "satrev/kb.hpp"

namespace satrev {

// Contract every bounded logic backend satisfies. Models are addressed by
// their deterministic enumeration index; Mod(phi) is a Bitset over that
// space. sentence_models is memoized inside the backend.
template <class S>
concept LogicSystem = requires(const S& sys, const typename S::Sentence& phi,
                               const typename S::Model& m) {
  typename S::Sentence;
  typename S::Model;
  { sys.model_count() } -> std::convertible_to<std::size_t>;
  { sys.model_at(std::size_t{}) } -> std::same_as<typename S::Model>;
  { sys.universe() } -> std::convertible_to<const Bitset&>;
  { sys.trivial_models() } -> std::convertible_to<const Bitset&>;
  { sys.satisfies(m, phi) } -> std::same_as<bool>;
  { sys.sentence_models(phi) } -> std::convertible_to<const Bitset&>;
  { sys.tautology() } -> std::same_as<typename S::Sentence>;
  { sys.sentence_text(phi) } -> std::convertible_to<std::string>;
};

template <class S>
using KBOf = KnowledgeBase<typename S::Sentence>;

// Customization point for logics that can synthesize a knowledge base with a
// prescribed model set (PL exactly; Horn up to the unavoidable all-true
// model). Assignment constructions require it.
template <class S>
struct TheoryFromModels {
  static constexpr bool available = false;
  static KBOf<S> build(const S&, const Bitset&) {
    throw Error::semantic("theory_from_models is not supported for this logic");
  }
};

// Mod(T): models (within bounds) satisfying every sentence; empty T gives
// the whole bounded space.
template <LogicSystem S>
Bitset models_of(const S& sys, const KBOf<S>& kb) {
  Bitset out = sys.universe();
  for (const auto& phi : kb) out &= sys.sentence_models(phi);
  return out;
}

// Consistency in the satisfaction-system sense: a non-trivial model exists.
template <LogicSystem S>
bool is_consistent(const S& sys, const KBOf<S>& kb) {
  return minus(models_of(sys, kb), sys.trivial_models()).any();
}

// phi in Cn(T), decided at the model level.
template <LogicSystem S>
bool entails(const S& sys, const KBOf<S>& kb, const typename S::Sentence& phi) {
  return models_of(sys, kb).subset_of(sys.sentence_models(phi));
}

// Cn(T) = Cn(T')  <=>  Mod(T) = Mod(T')
template <LogicSystem S>
bool cn_equal(const S& sys, const KBOf<S>& kb1, const KBOf<S>& kb2) {
  return models_of(sys, kb1) == models_of(sys, kb2);
}

// Canonical text of a knowledge base, used as a memo key.
template <LogicSystem S>
std::string kb_key(const S& sys, const KBOf<S>& kb) {
  std::string k;
  for (const auto& phi : kb) {
    k += sys.sentence_text(phi);
    k += '\n';
  }
  return k;
}

}  // namespace satrev
