#include "excalc/num.hpp"

#include <cstdio>

namespace excalc {

std::string CNum::key() const {
  if (exact) return "Q" + r.re.str() + "|" + r.im.str();
  char buf[64];
  std::snprintf(buf, sizeof buf, "D%a|%a", d.real(), d.imag());
  return buf;
}

}  // namespace excalc
