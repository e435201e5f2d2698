from typing import Literal

from pydantic import BaseModel, Field

UdaKind = Literal["none", "iwcv", "dev"]


class ValidationRiskDto(BaseModel):
    loss: str = Field("mse", description="등록된 검증 손실 이름 (mse, iptw, ...)")
    uda: UdaKind = "none"

    @property
    def label(self) -> str:
        """ 예: MSE, IPTW, IWCV(MSE), DEV(IPTW) """
        base = self.loss.upper()
        return base if self.uda == "none" else f"{self.uda.upper()}({base})"

    @property
    def icms_label(self) -> str:
        return f"ICMS({self.label})"
