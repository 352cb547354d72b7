/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CAVLOSS_VERSION_HPP
#define CAVLOSS_VERSION_HPP

namespace cavloss {

inline constexpr const char *version = "0.1.0";

} // namespace cavloss

#endif
