"""Prompt construction for the translation-quality judge.

The template carries the full seven-point scale and the response protocol
(marker-delimited reasoning, hallucination count). The COBOL block includes
the translation mappings, mirroring what the translator itself was given.
"""

from __future__ import annotations

import re

from ..errors import TemplateError

SCORE_SCALE: dict[int, str] = {
    1: "No attempt at translation; output lacks any meaningful correspondence to the source.",
    2: "Attempted translation with entirely fabricated classes or methods; functionally non-equivalent and not correctable.",
    3: "Partial elements of correct translation present; major errors or hallucinations; fixable with major developer effort.",
    4: "Mostly correct translation; moderate errors or hallucinations; fixable with moderate developer effort.",
    5: "Mostly accurate translation; minor errors or hallucinations; fixable with minimal developer effort.",
    6: "Functionally equivalent translation with verbosity, non-idiomatic constructs, or harmless hallucinations; refinement needed.",
    7: "Fully accurate, functionally equivalent, concise, and idiomatic translation.",
}

REASONING_START = "###Reasoning"
REASONING_END = "###End_Reasoning"

PROMPT_TEMPLATE = """Here is a COBOL program and its Java code translation.
The COBOL program includes the source code, along with variable and class mappings used in the translation process.

Please assign a score to the following: correctness of the control flow in the Java code translation.
Use a scale from 1 to 7, where:

{score_scale}

For each score, write the reasoning behind the score.
When you find something wrong, explain the problem in detail.

Give the score for the overall Java translation.

If the COBOL program contains an EXIT statement, please ignore it. It should not be translated to Java.
Do not penalize the score if the EXIT statement was omitted in the Java code.
If the Java code contains any TODO comments, ignore them.
When writing the reasoning, start with ###Reasoning and end with ###End_Reasoning.

If you find any Java translation that has no source in the COBOL code, count this as a hallucination.
Please report the total number of hallucinations in the Java code.

COBOL:
{COBOL_code}

Java:
{Java_code}
"""

_PLACEHOLDER_RE = re.compile(r"\{[A-Za-z_]+\}")


def scale_text() -> str:
    return "\n".join(f"{score}: {description}" for score, description in SCORE_SCALE.items())


_KNOWN_PLACEHOLDERS = {"{score_scale}", "{COBOL_code}", "{Java_code}"}


def render_prompt(cobol: str, java: str, maps_text: str = "", template: str | None = None) -> str:
    """Substitute the code pair (and mappings) into the judge prompt."""
    base = template if template is not None else PROMPT_TEMPLATE
    unknown = {m.group(0) for m in _PLACEHOLDER_RE.finditer(base)} - _KNOWN_PLACEHOLDERS
    if unknown:
        raise TemplateError(f"unexpanded placeholders in prompt template: {sorted(unknown)}")
    cobol_block = cobol.rstrip()
    if maps_text.strip():
        cobol_block += "\n\n" + maps_text.strip()
    prompt = base.replace("{score_scale}", scale_text())
    prompt = prompt.replace("{COBOL_code}", cobol_block)
    prompt = prompt.replace("{Java_code}", java.rstrip())
    return prompt
