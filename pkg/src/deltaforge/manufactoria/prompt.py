"""Prompt rendering for tape-machine tasks.

The template below is the fixed task preamble: DSL documentation, syntax
rules, a worked example, and a task section whose ``{criteria}`` slot takes
the instance's criterion text. ``{objective_clause}`` is filled per task
kind: transformation instances additionally state that the ending tape must
match the required output.
"""

from __future__ import annotations

from deltaforge.manufactoria.families import ProblemInstance

DSL_PROMPT_TEMPLATE = '''# Manufactoria Solution DSL

A Domain Specific Language for describing Manufactoria puzzle solutions
in text format.

## Overview

Manufactoria is a puzzle game where you build automated factories
to sort robots based on their colored tape patterns. Robots enter your
factory carrying sequences of colored tape, and you must route them
to the correct destinations based on the given criteria.

## Game Mechanics

### Robots and Tape
- **Robots**: Each robot carries a sequence of colored tapes
- **Tape Colors**: Primary colors are Blue (B) and Red (R), with additional
Yellow (Y) and Green (G) for advanced puzzles
- **Tape Representation**: Sequences are represented as strings
(e.g., `RBRR`, `BBR`, or empty string `""`)

### Operations
- **Pull**: Remove tape from the front of the robot's sequence
- **Paint**: Add colored tape to the end of the robot's sequence
- **Route**: Direct robots through the factory based on their current tape state

### Objective
Route robots to the correct destinations based on their final tape
configuration and the puzzle requirements:
- **Accepted**: Robot reaches the END node
- **Rejected**: Robot is routed to the NONE node, or caught in an infinite
loop, or robot reaches the END node but fails to meet the puzzle's
acceptance criteria

## DSL Syntax

### Program Structure

Every solution must start with a `START` directive and end with an
`END` directive, wrapped in ```manufactoria ...```:

```manufactoria
START start:
    NEXT <next_node_id>

# Factory logic goes here

END end
```

### Node Types

#### 1. Puller Nodes

Pullers remove specific colors from the front of the robot's tape sequence
and route based on the current front color.

**Red/Blue Puller:**

```manufactoria
PULLER_RB <node_id>:
    [R] <next_node_id>      # Route and remove color if front tape is Red
    [B] <next_node_id>      # Route and remove color if front tape is Blue
    [EMPTY] <next_node_id>  # Route if no tape or front tape is neither R nor B
```

**Yellow/Green Puller:**

```manufactoria
PULLER_YG <node_id>:
    [Y] <next_node_id>      # Route and remove color if front tape is Yellow
    [G] <next_node_id>      # Route and remove color if front tape is Green
    [EMPTY] <next_node_id>  # Route if no tape or front tape is neither Y nor G
```

**Note**: Unspecified branches default to `NONE`, which rejects the robot.

#### 2. Painter Nodes

Painters add colored tape to the end of the robot's sequence and continue
to the next node.

```manufactoria
PAINTER_RED <node_id>:
    NEXT <next_node_id>

PAINTER_BLUE <node_id>:
    NEXT <next_node_id>

PAINTER_YELLOW <node_id>:
    NEXT <next_node_id>

PAINTER_GREEN <node_id>:
    NEXT <next_node_id>
```

## Syntax Rules

1. **Node IDs**: Must be unique identifiers (alphanumeric characters
and underscores only)
2. **Comments**: Lines starting with `#` are comments (single-line only)
3. **Indentation**: Use consistent spaces or tabs for route definitions
4. **Case Sensitivity**: Colors must be uppercase (R, B, Y, G)
5. **Termination**:
   - Robots routed to `NONE` are rejected
   - Robots routed to the END node are accepted{objective_clause}
6. **Code Blocks**: Final factory code should be wrapped in triple
backticks with ``` markers

## Example

Here's a simple example that accepts robots with exactly one red tape
(ending tape should be empty):

```manufactoria
START start:
    NEXT entry

PULLER_RB entry:
    [R] end

END end
```

# Task
Your task is to design a factory with code with following functionality:

{criteria}
'''

_TRANSFORM_CLAUSE = (
    ", and the robot's final tape must exactly match the output required by the criteria"
)


def render_prompt(instance: ProblemInstance) -> str:
    """Full task prompt for an instance; two renders are identical text."""
    clause = _TRANSFORM_CLAUSE if instance.task_kind == "transform" else ""
    return (
        DSL_PROMPT_TEMPLATE
        .replace("{objective_clause}", clause)
        .replace("{criteria}", instance.criteria_text)
    )
