from abc import ABCMeta, abstractmethod
from typing import Any, Dict, Optional, Tuple

from ...core.supports.lattice import SupportCollection


class SupportFamily(metaclass=ABCMeta):
    """
    Base class for a named family of support collections.

    A family knows the default parameters of a generic member, e.g. the
    degrees of a dense system, and builds the SupportCollection from them.
    """

    def __init__(
        self,
        name: str,
        default_kwargs: Optional[Dict[str, Any]] = None,
        description: str = "",
        tags: Tuple[str, ...] = (),
    ):
        """
        Initialize the family with its default parameters.

        Args:
            name (str): Registry name.
            default_kwargs (Dict[str, Any]): Parameters of the generic member.
            description (str): One line description.
            tags (Tuple[str, ...]): Labels such as ``"corpus"`` or ``"lacunary"``.
        """
        self.name = name
        self.default_kwargs = dict(default_kwargs or {})
        self.description = description
        self.tags = tuple(tags)

    @abstractmethod
    def generic_factory(self, **kwargs: Any) -> SupportCollection:
        """
        Build the collection for the given parameters.

        Returns:
            SupportCollection: The supports of the family member.
        """
        raise NotImplementedError("Subclasses must implement this method.")

    def build(self, **overrides: Any) -> SupportCollection:
        return self.generic_factory(**{**self.default_kwargs, **overrides})

    def get_default_kwargs(self) -> Dict[str, Any]:
        return self.default_kwargs

    def has_tag(self, tag: str) -> bool:
        return tag in self.tags

    def serialize(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "family": type(self).__name__,
            "params": self.default_kwargs,
            "description": self.description,
            "tags": list(self.tags),
        }

    def get_str_representation(self) -> str:
        return self.name

    def __eq__(self, value: object) -> bool:
        if isinstance(value, SupportFamily):
            return value.name == self.name
        return value == self.name

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.name})"
