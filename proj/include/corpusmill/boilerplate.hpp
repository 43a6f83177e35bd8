#ifndef CORPUSMILL_BOILERPLATE_HPP
#define CORPUSMILL_BOILERPLATE_HPP

#include <span>
#include <vector>

#include "corpusmill/html.hpp"

namespace corpusmill {

struct BlockFeatures {
  double text_density = 0.0;  // tokens per 80-column wrapped line
  double link_density = 0.0;  // linked tokens / tokens
};

struct BoilerplateConfig {
  double link_density_max = 0.33;
  int min_tokens = 10;          // rule 2: short blocks next to boilerplate
  double text_density_min = 4.0;
  int sparse_tokens_max = 20;   // rule 3 token ceiling
  int smooth_tokens_max = 5;    // smoothing pass token ceiling
};

BlockFeatures block_features(const Block& block);

/// Marks redundant blocks in place; text is never changed. Rules, in
/// order: high link density; short blocks adjacent to already-marked
/// ones; sparse short blocks; then one smoothing pass that absorbs tiny
/// content blocks surrounded by boilerplate.
void classify_blocks(std::vector<Block>& blocks, const BoilerplateConfig& config = {});

}  // namespace corpusmill

#endif
