"""Precondition validators for term construction and cache configuration."""

from django.core.exceptions import ValidationError

from .conf import depth_limit


def validate_depth(value):
    """Validate a tower height against the configured depth limit.

    :param value: Requested height.
    :return: None if valid.
    :raises ValidationError: When the height is negative or above the limit.
    """
    if value < 0:
        raise ValidationError("Height must be a natural number.", code="negative_depth")
    limit = depth_limit()
    if value > limit:
        raise ValidationError(
            "Height %(value)s exceeds the depth limit of %(limit)s.",
            code="depth_limit",
            params={"value": value, "limit": limit},
        )


def validate_size_budget(value):
    """Validate the size budget of the random term generator.

    :param value: Size budget (log2 of the tree-size cap).
    :return: None if valid.
    :raises ValidationError: When the budget is below one.
    """
    if value < 1:
        raise ValidationError("Size budget must be at least 1.", code="size_budget")


def validate_bucket_count(value):
    """Validate an identity-cache bucket count.

    :param value: Number of buckets.
    :return: None if valid.
    :raises ValidationError: When there are no buckets.
    """
    if value < 1:
        raise ValidationError("Bucket count must be at least 1.", code="bucket_count")


def validate_ratio(value):
    """Validate a probability.

    :param value: Probability in [0, 1].
    :return: None if valid.
    :raises ValidationError: When the value is out of range.
    """
    if not 0.0 <= value <= 1.0:
        raise ValidationError("Probability must lie in [0, 1].", code="ratio")
