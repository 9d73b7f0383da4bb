#include "cartanflat/errors.hpp"

#include <array>
#include <charconv>

namespace cartanflat {

SingularMetric::SingularMetric(const std::string& what, std::vector<double> point)
    : Error([&] {
          std::string msg = what + " at (";
          for (std::size_t i = 0; i < point.size(); ++i) {
              if (i) msg += ", ";
              std::array<char, 32> buf{};
              auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), point[i]);
              msg.append(buf.data(), end);
          }
          return msg + ")";
      }()),
      point_(std::move(point)) {}

}  // namespace cartanflat
