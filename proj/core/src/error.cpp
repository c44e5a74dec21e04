// Copyright 2026 The papergraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "papergraph/error.hpp"

namespace papergraph {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidDocument: return "InvalidDocument";
    case ErrorKind::kEmptyDocument: return "EmptyDocument";
    case ErrorKind::kIoFailure: return "IoFailure";
    case ErrorKind::kBadMagic: return "BadMagic";
    case ErrorKind::kDimMismatch: return "DimMismatch";
    case ErrorKind::kNonFiniteValue: return "NonFiniteValue";
    case ErrorKind::kDuplicateId: return "DuplicateId";
    case ErrorKind::kMissingEmbedding: return "MissingEmbedding";
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kLabelOutOfRange: return "LabelOutOfRange";
    case ErrorKind::kEmptyDataset: return "EmptyDataset";
    case ErrorKind::kEmptySelection: return "EmptySelection";
    case ErrorKind::kUnknownPassageId: return "UnknownPassageId";
    case ErrorKind::kDocMismatch: return "DocMismatch";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace papergraph
