#pragma once

#include <stdexcept>
#include <string>

namespace aoe {

// Base class for every error this library raises on purpose. Precondition
// violations that no caller should ever trigger use std::invalid_argument.
class AoeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CycleError : public AoeError { public: using AoeError::AoeError; };
class UnknownTask : public AoeError { public: using AoeError::AoeError; };
class SameTask : public AoeError { public: using AoeError::AoeError; };
class UnknownVertex : public AoeError { public: using AoeError::AoeError; };
class UnknownEdge : public AoeError { public: using AoeError::AoeError; };
class NotUnlabeled : public AoeError { public: using AoeError::AoeError; };
class SelfLoop : public AoeError { public: using AoeError::AoeError; };
class DuplicateTaskLabel : public AoeError { public: using AoeError::AoeError; };
class MergeWouldDropTask : public AoeError { public: using AoeError::AoeError; };
class RuleNotApplicable : public AoeError { public: using AoeError::AoeError; };
class SizeLimitExceeded : public AoeError { public: using AoeError::AoeError; };
class NotSaturated : public AoeError { public: using AoeError::AoeError; };
class TooLarge : public AoeError { public: using AoeError::AoeError; };
class MissingDuration : public AoeError { public: using AoeError::AoeError; };
class InvalidDuration : public AoeError { public: using AoeError::AoeError; };
class ParseError : public AoeError { public: using AoeError::AoeError; };
class DuplicateTask : public AoeError { public: using AoeError::AoeError; };
class UnknownDep : public AoeError { public: using AoeError::AoeError; };
class CyclicDeps : public AoeError { public: using AoeError::AoeError; };

}  // namespace aoe
