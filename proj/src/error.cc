// Copyright 2026 The wordspoof Authors. All rights reserved.
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

#include "wordspoof/error.h"

namespace wordspoof {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnbalancedMarkers: return "UnbalancedMarkers";
    case ErrorKind::kNestedMarkers: return "NestedMarkers";
    case ErrorKind::kInvalidWord: return "InvalidWord";
    case ErrorKind::kEmptyReference: return "EmptyReference";
    case ErrorKind::kInputTooLarge: return "InputTooLarge";
    case ErrorKind::kAlignmentMismatch: return "AlignmentMismatch";
    case ErrorKind::kEmptyClass: return "EmptyClass";
    case ErrorKind::kNonMonotoneEdges: return "NonMonotoneEdges";
    case ErrorKind::kMissingGroupKey: return "MissingGroupKey";
    case ErrorKind::kOverlappingSpans: return "OverlappingSpans";
    case ErrorKind::kNoFramesInSpan: return "NoFramesInSpan";
    case ErrorKind::kOverlappingOps: return "OverlappingOps";
    case ErrorKind::kSpanOutOfRange: return "SpanOutOfRange";
    case ErrorKind::kSampleRateMismatch: return "SampleRateMismatch";
    case ErrorKind::kTooShort: return "TooShort";
    case ErrorKind::kInconsistentShape: return "InconsistentShape";
    case ErrorKind::kEmptyUtterance: return "EmptyUtterance";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kFormat: return "FormatError";
    case ErrorKind::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace wordspoof
