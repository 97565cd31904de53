#include "biasedwalk/skipgram.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace biasedwalk {

std::vector<std::pair<NodeId, NodeId>> context_pairs(const Corpus& corpus,
                                                     int window) {
  if (window < 1) throw ParamError("window must be >= 1");
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (const auto& walk : corpus.walks) {
    for_each_context_pair(std::span<const NodeId>(walk), window,
                          [&](NodeId t, NodeId c) { pairs.emplace_back(t, c); });
  }
  return pairs;
}

std::int64_t count_context_pairs(const Corpus& corpus, int window) {
  if (window < 1) throw ParamError("window must be >= 1");
  std::int64_t total = 0;
  for (const auto& walk : corpus.walks) {
    const auto n = static_cast<std::int64_t>(walk.size());
    for (std::int64_t i = 0; i < n; ++i) {
      total += std::min(n - 1, i + window) - std::max<std::int64_t>(0, i - window);
    }
  }
  return total;
}

UnigramTable::UnigramTable(std::span<const std::int64_t> counts, double power) {
  const std::size_t n = counts.size();
  if (n == 0) throw ParamError("unigram table needs a non-empty vocabulary");
  std::vector<double> weight(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    weight[i] = counts[i] > 0 ? std::pow(static_cast<double>(counts[i]), power)
                              : 0.0;
    total += weight[i];
  }
  if (total <= 0.0) throw ParamError("unigram table needs positive counts");

  // Vose alias construction.
  prob_.assign(n, 0.0);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  std::vector<std::size_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weight[i] * n / total;
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back();
    const std::size_t l = large.back();
    small.pop_back();
    large.pop_back();
    prob_[s] = scaled[s];
    alias_[s] = static_cast<NodeId>(l);
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  for (std::size_t i : large) prob_[i] = 1.0;
  for (std::size_t i : small) prob_[i] = 1.0;
}

template <typename Scalar>
void save_embeddings(std::ostream& out, const EmbeddingModel<Scalar>& m) {
  out << m.vocab_size() << ' ' << m.dim() << '\n';
  char buf[64];
  for (NodeId r = 0; r < m.vocab_size(); ++r) {
    out << m.tokens[r];
    for (int c = 0; c < m.dim(); ++c) {
      const double v = static_cast<double>(m.target(r, c));
      if (!std::isfinite(v)) {
        throw ParamError("non-finite embedding value at row " +
                         std::to_string(r + 1));
      }
      std::snprintf(buf, sizeof buf, " %.10g", v);
      out << buf;
    }
    out << '\n';
  }
}

template <typename Scalar>
EmbeddingModel<Scalar> load_embeddings(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("embedding file: empty input");
  std::istringstream header(line);
  std::int64_t vocab = -1, dim = -1;
  if (!(header >> vocab >> dim) || vocab < 0 || dim < 1) {
    throw ParseError("embedding file: malformed header '" + line + "'");
  }

  EmbeddingModel<Scalar> m;
  m.target.resize(vocab, dim);
  m.context = EmbeddingMatrix<Scalar>::Zero(vocab, dim);
  m.tokens.resize(vocab);
  for (std::int64_t r = 0; r < vocab; ++r) {
    if (!std::getline(in, line)) {
      throw ParseError("embedding file: truncated at row " +
                       std::to_string(r + 1) + " of " + std::to_string(vocab));
    }
    std::istringstream fields(line);
    if (!(fields >> m.tokens[r])) {
      throw ParseError("embedding file: empty row " + std::to_string(r + 1));
    }
    for (std::int64_t c = 0; c < dim; ++c) {
      double v;
      if (!(fields >> v)) {
        throw ParseError("embedding file: row " + std::to_string(r + 1) +
                         " has fewer than " + std::to_string(dim) + " values");
      }
      if (!std::isfinite(v)) {
        throw ParseError("embedding file: non-finite value in row " +
                         std::to_string(r + 1));
      }
      m.target(r, c) = static_cast<Scalar>(v);
    }
    std::string extra;
    if (fields >> extra) {
      throw ParseError("embedding file: row " + std::to_string(r + 1) +
                       " has more than " + std::to_string(dim) + " values");
    }
  }
  m.rebuild_index();
  if (m.index.size() != m.tokens.size()) {
    throw ParseError("embedding file: duplicate node tokens");
  }
  return m;
}

template void save_embeddings<float>(std::ostream&, const EmbeddingModel<float>&);
template void save_embeddings<double>(std::ostream&, const EmbeddingModel<double>&);
template EmbeddingModel<float> load_embeddings<float>(std::istream&);
template EmbeddingModel<double> load_embeddings<double>(std::istream&);

}  // namespace biasedwalk
