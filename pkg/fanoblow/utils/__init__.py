"""
fanoblow ユーティリティパッケージ
"""
