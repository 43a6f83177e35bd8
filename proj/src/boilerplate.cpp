#include "corpusmill/boilerplate.hpp"

#include <cmath>

#include "corpusmill/text.hpp"

namespace corpusmill {

BlockFeatures block_features(const Block& block) {
  BlockFeatures f;
  if (block.tokens > 0) {
    f.link_density = static_cast<double>(block.linked_tokens) / block.tokens;
    double chars = static_cast<double>(utf8_length(block.text));
    double lines = std::ceil(chars / 80.0);
    if (lines > 0) f.text_density = block.tokens / lines;
  }
  return f;
}

void classify_blocks(std::vector<Block>& blocks, const BoilerplateConfig& config) {
  const std::size_t n = blocks.size();
  if (n == 0) return;

  std::vector<BlockFeatures> features(n);
  for (std::size_t i = 0; i < n; ++i) features[i] = block_features(blocks[i]);

  // rule 1: link-dominated blocks
  std::vector<bool> marked(n, false);
  for (std::size_t i = 0; i < n; ++i)
    if (blocks[i].tokens > 0 && features[i].link_density > config.link_density_max)
      marked[i] = true;

  // rule 2: short blocks adjacent to blocks already marked by rule 1
  std::vector<bool> after_rule1 = marked;
  for (std::size_t i = 0; i < n; ++i) {
    if (marked[i] || blocks[i].tokens >= config.min_tokens) continue;
    bool prev = i > 0 && after_rule1[i - 1];
    bool next = i + 1 < n && after_rule1[i + 1];
    if (prev || next) marked[i] = true;
  }

  // rule 3: sparse short blocks
  for (std::size_t i = 0; i < n; ++i)
    if (!marked[i] && features[i].text_density < config.text_density_min &&
        blocks[i].tokens < config.sparse_tokens_max)
      marked[i] = true;

  // smoothing: tiny content islands between boilerplate
  std::vector<bool> before_smooth = marked;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (!before_smooth[i] && blocks[i].tokens < config.smooth_tokens_max &&
        before_smooth[i - 1] && before_smooth[i + 1])
      marked[i] = true;

  for (std::size_t i = 0; i < n; ++i) blocks[i].is_boilerplate = marked[i];
}

}  // namespace corpusmill
