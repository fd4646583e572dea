//
// Copyright 2026 The dpssp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPSSP_CORE_STATUS_MACROS_H_
#define DPSSP_CORE_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define DPSSP_RETURN_IF_ERROR(expr)                 \
  do {                                              \
    const absl::Status _dpssp_status = (expr);      \
    if (!_dpssp_status.ok()) return _dpssp_status;  \
  } while (0)

#define DPSSP_STATUS_CONCAT_INNER(a, b) a##b
#define DPSSP_STATUS_CONCAT(a, b) DPSSP_STATUS_CONCAT_INNER(a, b)

#define DPSSP_ASSIGN_OR_RETURN(lhs, expr)                                  \
  DPSSP_ASSIGN_OR_RETURN_IMPL(DPSSP_STATUS_CONCAT(_dpssp_or_, __LINE__), \
                              lhs, expr)

#define DPSSP_ASSIGN_OR_RETURN_IMPL(tmp, lhs, expr) \
  auto tmp = (expr);                                \
  if (!tmp.ok()) return tmp.status();               \
  lhs = *std::move(tmp)

#endif  // DPSSP_CORE_STATUS_MACROS_H_
