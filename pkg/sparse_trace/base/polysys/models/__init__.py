from .system import ComplexPayload, PointPayload, SystemPayload

__all__ = ["ComplexPayload", "PointPayload", "SystemPayload"]
