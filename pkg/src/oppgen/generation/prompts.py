"""Prompt templates and rendering for the text-generation service.

The business direct template and the policy pivot template are the
reference wordings; the other kind variants follow the same structure
with kind-appropriate role, area and description axes. Substitution
slot content is the only part that varies per request; everything else
is fixed text covered by golden-file tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ..discovery import OpportunitySpace, TopicTerm
from ..errors import EmptyList, MissingDescription
from .novelty import novelty_selection
from .records import KIND_WORDS, GenerationRequest, Opportunity

__all__ = [
    "TextGenRequest",
    "render_space_description_prompt",
    "render_direct_prompt",
    "render_pivot_prompt",
    "render_rating_prompt",
    "DESCRIPTION_TEMPERATURE",
]

DESCRIPTION_TEMPERATURE = 0.7
RATING_TEMPERATURE = 0.0


@dataclass(frozen=True)
class TextGenRequest:
    prompt: str
    temperature: float
    top_p: float = 1.0
    frequency_penalty: float = 0.0
    presence_penalty: float = 0.0
    seed: Optional[int] = None  # honored by the mock service only

    def to_dict(self) -> dict:
        return {
            "prompt": self.prompt,
            "temperature": self.temperature,
            "top_p": self.top_p,
            "frequency_penalty": self.frequency_penalty,
            "presence_penalty": self.presence_penalty,
            "seed": self.seed,
        }


SPACE_DESCRIPTION_TEMPLATE = (
    "You are an experienced consultant. Generate a single paragraph of 100-words "
    "that accurately describes the area characterised by the following terms. "
    "Also generate a short name for the summary that does not contain a verb. "
    "Do not generate other content. The summary should use direct language that "
    "can be understood by someone with limited design knowledge. The first "
    'sentence should start with the expression "This area is". '
    "The terms are: {terms}."
)

_DIRECT_TEMPLATES = {
    "business": (
        "As an experienced business analyst/consultant, recommend 10 business "
        "innovations. Each innovation must be different. The idea underpinning "
        "each innovation must centre on one of more topics from {terms} and "
        "incorporate interpretations of other themes referenced in the following "
        "{description}. Each idea must be {novelty} compared to other possible "
        "innovations.{needs_clause} Describe each innovation in terms of its "
        "underlying idea, beneficiaries and markets, expected outcomes, and "
        "possible implementation strategy. Each innovation should be described "
        "in at least 100 words and presented as a title of up to 10 words, a "
        "colon character and the 100-word description. Don't use bullets, and "
        "new lines either in the title or the description.{qualities_clause}"
    ),
    "policy": (
        "As an experienced policy maker, recommend 10 policy opportunities. "
        "Each opportunity must be different. The idea underpinning each "
        "opportunity must centre on one of more topics from {terms} and "
        "incorporate interpretations of other themes referenced in the following "
        "{description}. Each opportunity must be {novelty} compared to other "
        "possible opportunities.{needs_clause} Describe each opportunity to "
        "define how it is focused on its audience, responsive and accountable "
        "to this audience, effective and efficient, and improving lives. Each "
        "opportunity should be described in at least 120 words and presented as "
        "a title of up to 10 words, a colon character and the 120-word "
        "description. Don't use bullets, and new lines either in the title or "
        "the description.{qualities_clause}"
    ),
    "technical_design": (
        "As an experienced technology consultant, recommend 10 technical design "
        "innovations. Each innovation must be different. The idea underpinning "
        "each innovation must centre on one of more topics from {terms} and "
        "incorporate interpretations of other themes referenced in the following "
        "{description}. Each innovation must be {novelty} compared to other "
        "possible innovations.{needs_clause} Describe each innovation in terms "
        "of its underlying idea, the technologies it develops and applies, "
        "beneficiaries, expected outcomes, and possible implementation strategy. "
        "Each innovation should be described in at least 100 words and presented "
        "as a title of up to 10 words, a colon character and the 100-word "
        "description. Don't use bullets, and new lines either in the title or "
        "the description.{qualities_clause}"
    ),
}

_PIVOT_TEMPLATES = {
    "policy": (
        "As an experienced policy maker, recommend 10 specific alternative "
        "policy opportunities with considerable novelty that are creative "
        "variations of the following idea. {opportunity}. All 10 variations "
        "must be within the space described by one of two different policy "
        "areas and their topics. The first, third and fifth should be from the "
        "first policy area, the second, fourth, sixth should be from the second "
        "policy area, and the remaining four opportunities should integrate "
        "opportunities from both policy areas. The first policy area is as "
        "follows. {description_a}. The topics in the area are {terms_a}. The "
        "second policy area is as follows. {description_b}. The topics in the "
        "area are {terms_b}. Each policy opportunity should be based on at "
        "least one of the topics. Each opportunity should be {novelty} of those "
        "that are possible in each policy area.{needs_clause} Describe each "
        "opportunity to define how it is focused on its audience, responsive "
        "and accountable to this audience, effective and efficient, and "
        "improving lives. Each policy should be described in at least 120 words "
        "and presented as a title of up to 10 words, a colon character and the "
        "120-word description. Don't use bullets, and new lines either in the "
        "title or the description.{qualities_clause}"
    ),
    "business": (
        "As an experienced business analyst/consultant, recommend 10 specific "
        "alternative business opportunities with considerable novelty that are "
        "creative variations of the following idea. {opportunity}. All 10 "
        "variations must be within the space described by one of two different "
        "business areas and their topics. The first, third and fifth should be "
        "from the first business area, the second, fourth, sixth should be from "
        "the second business area, and the remaining four opportunities should "
        "integrate opportunities from both business areas. The first business "
        "area is as follows. {description_a}. The topics in the area are "
        "{terms_a}. The second business area is as follows. {description_b}. "
        "The topics in the area are {terms_b}. Each business opportunity should "
        "be based on at least one of the topics. Each opportunity should be "
        "{novelty} of those that are possible in each business area."
        "{needs_clause} Describe each innovation in terms of its underlying "
        "idea, beneficiaries and markets, expected outcomes, and possible "
        "implementation strategy. Each opportunity should be described in at "
        "least 100 words and presented as a title of up to 10 words, a colon "
        "character and the 100-word description. Don't use bullets, and new "
        "lines either in the title or the description.{qualities_clause}"
    ),
    "technical_design": (
        "As an experienced technology consultant, recommend 10 specific "
        "alternative technical design opportunities with considerable novelty "
        "that are creative variations of the following idea. {opportunity}. All "
        "10 variations must be within the space described by one of two "
        "different technical design areas and their topics. The first, third "
        "and fifth should be from the first technical design area, the second, "
        "fourth, sixth should be from the second technical design area, and the "
        "remaining four opportunities should integrate opportunities from both "
        "technical design areas. The first technical design area is as follows. "
        "{description_a}. The topics in the area are {terms_a}. The second "
        "technical design area is as follows. {description_b}. The topics in "
        "the area are {terms_b}. Each technical design opportunity should be "
        "based on at least one of the topics. Each opportunity should be "
        "{novelty} of those that are possible in each technical design area."
        "{needs_clause} Describe each innovation in terms of its underlying "
        "idea, the technologies it develops and applies, beneficiaries, "
        "expected outcomes, and possible implementation strategy. Each "
        "opportunity should be described in at least 100 words and presented as "
        "a title of up to 10 words, a colon character and the 100-word "
        "description. Don't use bullets, and new lines either in the title or "
        "the description.{qualities_clause}"
    ),
}

_QUALITY_NOUN = {"business": "innovation", "policy": "opportunity", "technical_design": "innovation"}

RATING_TEMPLATE = (
    "You are an expert evaluator of innovation opportunities that innovation "
    "consultants can implement on behalf of clients. Assess the relative "
    "novelty and usefulness of lists of opportunities, even outside your own "
    "domain, relevant to the specific client challenge. Be unbiased and "
    "analytical in your evaluation. The client's {kind_word} challenge is:\n"
    "\n"
    "{challenge}\n"
    "\n"
    "The opportunities are:\n"
    "{opportunities}\n"
    "\n"
    "Examine each opportunity for its strengths and weaknesses, its relevance "
    "to the above challenge, how well it can overcome the challenge, how "
    "similar or different it is to previous solutions implemented to address "
    "the challenge, and how different it is to previous solutions implemented "
    "in the UK hospitality sector.\n"
    "\n"
    "Use the outcomes of these examinations to rate each {kind_word} "
    "opportunity in the list using two criteria:\n"
    "\n"
    "- The opportunity's novelty on a scale of 1 to 7, where 1 is a very "
    "commonplace opportunity for overcoming the client's challenge and 7 is a "
    "highly unusual, novel and rare opportunity for overcoming the client's "
    "challenge\n"
    "- The opportunity's usefulness on a scale of 1 to 7, where 1 is not at "
    "all useful for overcoming the client's challenge and 7 is extremely "
    "useful and effective for overcoming the client's challenge\n"
    "\n"
    "Each rating should be an integer that is 1, 2, 3, 4, 5, 6 or 7. Present "
    "the ratings in a table of two columns and {row_count} rows of the novelty "
    "ratings then the usefulness ratings. The table can be downloaded."
)


def _terms_text(terms: Sequence[TopicTerm]) -> str:
    return ", ".join(t.term for t in terms)


def _slot_sentence(text: str) -> str:
    """Slot content inserted before template-owned punctuation."""
    return text.strip().rstrip(".")


def _needs_clause(custom_text: str) -> str:
    if not custom_text.strip():
        return ""
    return f" Each opportunity should align with the following needs: {_slot_sentence(custom_text)}."


def _qualities_clause(qualities: Sequence[str], kind: str) -> str:
    if not qualities:
        return ""
    noun = _QUALITY_NOUN[kind]
    return f" Each {noun} must have the following creative qualities: {', '.join(qualities)}."


def render_space_description_prompt(topic_terms: Sequence[TopicTerm]) -> TextGenRequest:
    """Prompt asking for a space's short label and 100-word description."""
    if not topic_terms:
        raise EmptyList("need at least one topic term")
    ordered = sorted(topic_terms, key=lambda t: t.rank)
    prompt = SPACE_DESCRIPTION_TEMPLATE.format(terms=_terms_text(ordered))
    return TextGenRequest(prompt=prompt, temperature=DESCRIPTION_TEMPERATURE)


def render_direct_prompt(request: GenerationRequest, space: OpportunitySpace) -> TextGenRequest:
    """Prompt generating ten opportunities directly from one space."""
    if not space.description:
        raise MissingDescription(f"space {space.space_id} has no description yet")
    selected, temperature = novelty_selection(request.novelty_level, space.topic_terms)
    prompt = _DIRECT_TEMPLATES[request.kind].format(
        terms=_terms_text(selected),
        description=_slot_sentence(space.description),
        novelty=novelty_phrase(request.novelty_level),
        needs_clause=_needs_clause(request.custom_text),
        qualities_clause=_qualities_clause(request.qualities, request.kind),
    )
    return TextGenRequest(prompt=prompt, temperature=temperature)


def render_pivot_prompt(
    selected: Opportunity,
    space_a: OpportunitySpace,
    space_b: OpportunitySpace,
    request: GenerationRequest,
) -> TextGenRequest:
    """Prompt generating ten creative variations of a chosen opportunity.

    The two spaces may be the same space (single-space pivot); the template
    then fills both area slots identically.
    """
    for space in (space_a, space_b):
        if not space.description:
            raise MissingDescription(f"space {space.space_id} has no description yet")
    terms_a, temperature = novelty_selection(request.novelty_level, space_a.topic_terms)
    terms_b, _ = novelty_selection(request.novelty_level, space_b.topic_terms)
    prompt = _PIVOT_TEMPLATES[request.kind].format(
        opportunity=_slot_sentence(selected.text),
        description_a=_slot_sentence(space_a.description),
        terms_a=_terms_text(terms_a),
        description_b=_slot_sentence(space_b.description),
        terms_b=_terms_text(terms_b),
        novelty=novelty_phrase(request.novelty_level),
        needs_clause=_needs_clause(request.custom_text),
        qualities_clause=_qualities_clause(request.qualities, request.kind),
    )
    return TextGenRequest(prompt=prompt, temperature=temperature)


def render_rating_prompt(
    challenge: str, opportunities: Sequence[Opportunity], kind: str
) -> TextGenRequest:
    """Prompt rating a batch of opportunities for novelty and usefulness."""
    if not opportunities:
        raise EmptyList("no opportunities to rate")
    listing = "\n".join(f"{i + 1}. {o.text}" for i, o in enumerate(opportunities))
    prompt = RATING_TEMPLATE.format(
        kind_word=KIND_WORDS[kind],
        challenge=challenge.strip(),
        opportunities=listing,
        row_count=len(opportunities),
    )
    return TextGenRequest(prompt=prompt, temperature=RATING_TEMPERATURE)


def novelty_phrase(level: str) -> str:
    from .novelty import novelty_setting

    return novelty_setting(level).phrase
