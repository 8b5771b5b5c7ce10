from .machines import Config, TuringMachine, TwoStackMachine, tape_from_stacks, tm_to_two_stack
from .network import (
    STEP_DILATION,
    CompiledRnn,
    TraceEntry,
    attach_output_gadget,
    compile_two_stack,
    decode_config,
    simulate,
)
from .stacks import (
    DIGIT_CODEC,
    LITERAL_CODEC,
    decode_stack,
    encode_stack,
    encode_stack_literal,
    stack_pop,
    stack_push,
    stack_top,
)
