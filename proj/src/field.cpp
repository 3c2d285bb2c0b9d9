#include "photokin/field.hpp"

namespace photokin {

SolutionField::SolutionField(const GridSpec& grid, std::string scheme_name)
    : grid_(grid), scheme_(std::move(scheme_name)),
      data_((grid.Nt + 1) * (grid.Nx + 1), 0.0) {}

}  // namespace photokin
