#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace satrev {

// Ordered finite sequence of sentences with stable indices. Structural
// duplicates are dropped on insertion (first occurrence wins); semantic
// duplicates are kept.
template <class Sentence>
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  explicit KnowledgeBase(std::vector<Sentence> sentences) {
    for (auto& s : sentences) add(std::move(s));
  }

  bool add(Sentence s) {
    if (contains(s)) return false;
    sentences_.push_back(std::move(s));
    return true;
  }

  bool contains(const Sentence& s) const {
    return std::find(sentences_.begin(), sentences_.end(), s) != sentences_.end();
  }

  std::size_t size() const { return sentences_.size(); }
  bool empty() const { return sentences_.empty(); }
  const Sentence& operator[](std::size_t i) const { return sentences_[i]; }
  const std::vector<Sentence>& sentences() const { return sentences_; }

  auto begin() const { return sentences_.begin(); }
  auto end() const { return sentences_.end(); }

  // Order-preserving union with AST-level dedup.
  KnowledgeBase united(const KnowledgeBase& other) const {
    KnowledgeBase out = *this;
    for (const auto& s : other) out.add(s);
    return out;
  }

  bool operator==(const KnowledgeBase& o) const { return sentences_ == o.sentences_; }
  bool operator!=(const KnowledgeBase& o) const { return !(*this == o); }

 private:
  std::vector<Sentence> sentences_;
};

}  // namespace satrev
