"""deltaforge: generation and verification engine for two verifiable task scopes.

The package has three layers:

* ``deltaforge.manufactoria`` -- a tape-machine DSL (lexer, parser, interpreter),
  14 templated problem families with specification oracles, seeded test-suite
  generation, and a judge that scores candidate programs.
* ``deltaforge.bounce`` -- a ground-truth 2D physics oracle for convex-polygon
  balls bouncing elastically inside (possibly rotating / translating) regular
  polygon containers, seeded scene samplers across six problem families and
  five difficulty tiers, the periodic-shuttle constructor, JSONL dataset
  emission, and a sandboxed runner that scores candidate predictor programs.
* ``deltaforge.rewards`` / ``deltaforge.service`` -- staged reward schedules,
  an experience-replay trace store, failure-feedback rendering, and an HTTP
  facade over all of it for external RL trainers.

Everything is deterministic in explicit seeds; no module touches global RNG
state.
"""

from deltaforge.scoring import Failure, Score

__version__ = "0.1.0"

__all__ = ["Score", "Failure", "__version__"]
