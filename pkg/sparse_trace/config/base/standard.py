from typing import Any, Dict, List, Optional, TypeVar, Union, cast

from ...core.supports.lattice import SupportCollection
from ...err import ConfigError
from .representation import SupportFamily

T = TypeVar("T", bound="SupportStandard")


class SupportStandard:
    """
    Registry of named support families.
    There is one registry per class; constructing it again returns the same
    instance with its families intact.
    """

    def __new__(cls, *args: Any, **kwargs: Any) -> T:
        if "_instance" not in cls.__dict__:
            cls._instance = super(SupportStandard, cls).__new__(cls)
        return cls._instance

    def __init__(self, bindings: Optional[Dict[str, str]] = None):
        """
        Initialize the registry.

        Args:
            bindings (Dict[str, str]): Aliases mapping an alternative name to
                a registered family name.
        """
        if getattr(self, "_ready", False):
            return
        self.bindings = dict(bindings or {})
        self.families: List[SupportFamily] = []
        self._ready = True

    def add_family(self, family: SupportFamily) -> T:
        """
        Register a family, replacing one of the same name.

        Args:
            family (SupportFamily): The family to add.
        """
        self.families = [f for f in self.families if f.name != family.name]
        self.families.append(family)
        return cast(T, self)

    def _search_by_name(self, name: str) -> Optional[SupportFamily]:
        name = self.bindings.get(name, name)
        for family in self.families:
            if family == name:
                return family
        return None

    def get_similar(self, value: Any) -> Optional[SupportFamily]:
        """
        Find a family by name or alias.

        Returns:
            Optional[SupportFamily]: The family or None.
        """
        if isinstance(value, SupportFamily):
            value = value.name
        return self._search_by_name(str(value))

    def __getitem__(self, key: str) -> Optional[SupportFamily]:
        return self.get_similar(key)

    def __contains__(self, key: str) -> bool:
        return self.get_similar(key) is not None

    def build(self, name: str, **params: Any) -> SupportCollection:
        """
        Collection of the named family.

        Raises:
            ConfigError: for an unknown name.
        """
        family = self.get_similar(name)
        if family is None:
            raise ConfigError(f"Unknown support family '{name}'.", known=self.get_families(stringfy=True))
        return family.build(**params)

    def tagged(self, tag: str) -> List[SupportFamily]:
        return [f for f in self.families if f.has_tag(tag)]

    def get_families(self, stringfy: bool = False) -> List[Union[SupportFamily, str]]:
        """
        All registered families.

        Args:
            stringfy (bool): Return names instead of the family objects.
        """
        if stringfy:
            return [f.get_str_representation() for f in self.families]
        return list(self.families)
