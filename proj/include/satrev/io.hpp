#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "satrev/dl.hpp"
#include "satrev/fol.hpp"
#include "satrev/horn.hpp"
#include "satrev/pl.hpp"

namespace satrev::io {

enum class Logic { PL, HCL, FOL, DL };

std::string to_string(Logic logic);
Logic logic_from(const std::string& name);

// One parsed knowledge-base document: header (logic, signature, options)
// plus the sentence list. Exactly the branch matching `logic` is populated.
struct Document {
  Logic logic = Logic::PL;
  std::string name;
  std::optional<int> bound;
  bool allow_empty_domain = false;
  bool nonempty_concepts = false;

  pl::Signature pl_sig;
  std::vector<pl::Sentence> pl_sentences;

  horn::Signature horn_sig;
  std::vector<horn::Sentence> horn_sentences;

  fol::Signature fol_sig;
  std::vector<fol::Sentence> fol_sentences;

  dl::Signature dl_sig;
  dl::Fragment fragment = dl::Fragment::ALC;
  std::vector<dl::Axiom> dl_axioms;
  std::vector<dl::Concept> exceptions;  // ordered, from the header
};

Document parse_document(const std::string& text);
Document load_document(const std::string& path);
std::string serialize(const Document& doc);

// Flat key = value run configuration (operator selection and engine knobs).
struct RunConfig {
  std::map<std::string, std::string> values;

  std::string get(const std::string& key, const std::string& fallback = "") const;
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::string& path);
};

}  // namespace satrev::io
