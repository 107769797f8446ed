/* This file is part of slinf.
 *
 * Copyright (c) 2026 the slinf developers.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef SLINF_SLINF_HPP
#define SLINF_SLINF_HPP

#include "slinf/alpha.hpp"
#include "slinf/bochner.hpp"
#include "slinf/classb.hpp"
#include "slinf/density.hpp"
#include "slinf/errors.hpp"
#include "slinf/group.hpp"
#include "slinf/kernels.hpp"
#include "slinf/rng.hpp"
#include "slinf/serialize.hpp"

#endif
