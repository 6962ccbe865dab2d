/*
 * Copyright (c) 2026 The quated Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef QUATED_QUATED_HPP
#define QUATED_QUATED_HPP

#include "quated/checkpoint.hpp"
#include "quated/classification.hpp"
#include "quated/embedding.hpp"
#include "quated/errors.hpp"
#include "quated/properties.hpp"
#include "quated/quat_vec.hpp"
#include "quated/quaternion.hpp"
#include "quated/ranking.hpp"
#include "quated/report.hpp"
#include "quated/scoring.hpp"
#include "quated/synthetic.hpp"
#include "quated/train.hpp"
#include "quated/triple_store.hpp"

#endif  // QUATED_QUATED_HPP
