#include "weil/forms.hpp"

#include <algorithm>

namespace weil {

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i + 1;
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

}  // namespace weil
