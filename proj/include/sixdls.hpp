// Copyright 2026 The sixdls Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef SIXDLS_SIXDLS_HPP_
#define SIXDLS_SIXDLS_HPP_

#include "sixdls/cache.hpp"
#include "sixdls/convex_hull.hpp"
#include "sixdls/core.hpp"
#include "sixdls/geometry.hpp"
#include "sixdls/gws.hpp"
#include "sixdls/io.hpp"
#include "sixdls/kinematics.hpp"
#include "sixdls/limit_surface.hpp"
#include "sixdls/linearize.hpp"
#include "sixdls/lp.hpp"
#include "sixdls/pipeline.hpp"
#include "sixdls/quadrature.hpp"
#include "sixdls/study.hpp"
#include "sixdls/wrench.hpp"

#endif  // SIXDLS_SIXDLS_HPP_
