from .novelty import NOVELTY_LEVELS, NOVELTY_TABLE, NoveltySetting, novelty_selection, novelty_setting
from .parsing import parse_opportunities, parse_space_description
from .prompts import (
    RATING_TEMPLATE,
    SPACE_DESCRIPTION_TEMPLATE,
    TextGenRequest,
    render_direct_prompt,
    render_pivot_prompt,
    render_rating_prompt,
    render_space_description_prompt,
)
from .qualities import CREATIVE_QUALITIES, MAX_QUALITIES, validate_qualities
from .records import (
    BATCH_SIZE,
    KIND_WORDS,
    OPPORTUNITY_KINDS,
    GenerationRequest,
    Opportunity,
)
from .textgen import FaultPlan, HttpTextGen, MockTextGen, TextGenService

__all__ = [
    "NOVELTY_LEVELS",
    "NOVELTY_TABLE",
    "NoveltySetting",
    "novelty_selection",
    "novelty_setting",
    "parse_opportunities",
    "parse_space_description",
    "RATING_TEMPLATE",
    "SPACE_DESCRIPTION_TEMPLATE",
    "TextGenRequest",
    "render_direct_prompt",
    "render_pivot_prompt",
    "render_rating_prompt",
    "render_space_description_prompt",
    "CREATIVE_QUALITIES",
    "MAX_QUALITIES",
    "validate_qualities",
    "BATCH_SIZE",
    "KIND_WORDS",
    "OPPORTUNITY_KINDS",
    "GenerationRequest",
    "Opportunity",
    "FaultPlan",
    "HttpTextGen",
    "MockTextGen",
    "TextGenService",
]
