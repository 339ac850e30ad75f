#ifndef RELKIT_BUDGET_HPP
#define RELKIT_BUDGET_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace relkit {

// Every operation that can blow up carries an explicit budget and refuses
// loudly instead of approximating. required() reports the budget that would
// have been enough, when that is known up front.
class BudgetError : public std::runtime_error {
public:
  BudgetError(std::string msg, std::uint64_t required)
      : std::runtime_error(std::move(msg)), required_(required) {}

  std::uint64_t required() const { return required_; }

private:
  std::uint64_t required_;
};

struct Budget {
  // Largest degree for which exact invariance groups are computed.
  int max_degree_exact = 13;
  // Mask count cap for exhaustive power-set scans (2^degree must fit).
  std::uint64_t scan_budget = 1u << 17;
  // Element cap for streaming a whole group.
  std::uint64_t enum_budget = 10'000'000;
  // Node cap for backtrack searches.
  std::uint64_t search_nodes = 50'000'000;
};

}  // namespace relkit

#endif
